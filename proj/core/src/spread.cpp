#include "symspread/spread.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "symspread/zsig.hpp"

namespace symspread {

Spread build_spread(const Tower& t) {
  Spread s;
  s.p = t.p();
  s.a = t.a();
  s.m = t.m();
  s.q = t.q();

  // omega^{q^m + 1} generates the multiplicative group of the subfield
  // F_{q^m}; its powers 1, g, ..., g^{m-1} form an F_q-basis of it.
  const u64 classes = t.qm() + 1;
  std::vector<FFElem> mid_basis;
  FFElem g = t.omega_pow(classes);
  FFElem acc = t.one();
  for (int j = 0; j < t.m(); ++j) {
    mid_basis.push_back(acc);
    acc = t.mul(acc, g);
  }

  s.members.reserve(classes);
  for (u64 i = 0; i < classes; ++i) {
    FFElem shift = t.omega_pow(i);
    std::vector<VecQ> rows;
    rows.reserve(mid_basis.size());
    for (const auto& b : mid_basis) rows.push_back(t.coords(t.mul(shift, b)));
    s.members.push_back(rref_subspace(t.fq(), rows, t.dim()));
  }
  return s;
}

SpreadValidation validate_spread(const FqTables& fq, const Spread& s, const GramForm& form) {
  SpreadValidation v;
  auto fail = [&](std::string invariant, std::string witness) {
    v.ok = false;
    v.failed_invariant = std::move(invariant);
    v.witness = std::move(witness);
  };

  const u64 expected_members = checked_pow(s.q, static_cast<u64>(s.m)) + 1;
  if (s.members.size() != expected_members) {
    fail("member count", fmt::format("expected {} members, found {}", expected_members,
                                     s.members.size()));
    return v;
  }
  v.confirmations.push_back(fmt::format("member count {}", s.members.size()));

  for (size_t i = 0; i < s.members.size(); ++i) {
    if (s.members[i].dim() != s.m) {
      fail("member dimension",
           fmt::format("member {} has dimension {}, expected {}", i, s.members[i].dim(), s.m));
      return v;
    }
    if (!is_totally_isotropic(fq, s.members[i], form)) {
      fail("total isotropy", fmt::format("member {} is not totally isotropic", i));
      return v;
    }
  }
  v.confirmations.push_back(
      fmt::format("all members are totally isotropic of dimension {}", s.m));

  for (size_t i = 0; i < s.members.size(); ++i) {
    for (size_t j = i + 1; j < s.members.size(); ++j) {
      Subspace meet = intersect(fq, s.members[i], s.members[j]);
      if (meet.dim() != 0) {
        fail("pairwise trivial intersection",
             fmt::format("members {} and {} share a {}-dimensional subspace", i, j, meet.dim()));
        return v;
      }
    }
  }
  v.confirmations.push_back("pairwise intersections are zero");

  // With the invariants above, the members partition the nonzero vectors, so
  // covering reduces to the count (q^m + 1)(q^m - 1) + 1 = q^{2m}.
  const u64 qm = checked_pow(s.q, static_cast<u64>(s.m));
  const u64 covered = s.members.size() * (qm - 1) + 1;
  const u64 total = checked_pow(s.q, static_cast<u64>(2 * s.m));
  if (covered != total) {
    fail("covering count", fmt::format("covers {} of {} vectors", covered, total));
    return v;
  }
  v.confirmations.push_back(fmt::format("covers all {} vectors", total));
  return v;
}

SpreadAction map_spread(const FqTables& fq, const MatQ& m, const Spread& s) {
  std::map<Subspace, u32> index;
  for (u32 i = 0; i < s.members.size(); ++i) index.emplace(s.members[i], i);

  SpreadAction act;
  act.perm.resize(s.members.size());
  for (u32 i = 0; i < s.members.size(); ++i) {
    Subspace img = apply_to_subspace(fq, s.members[i], m);
    auto it = index.find(img);
    if (it == index.end()) {
      act.stabilized = false;
      act.witness_member = static_cast<int>(i);
      act.perm.clear();
      return act;
    }
    act.perm[i] = it->second;
  }
  act.stabilized = true;
  return act;
}

std::vector<u32> fixed_members(const FqTables& fq, const MatQ& m, const Spread& s) {
  SpreadAction act = map_spread(fq, m, s);
  if (!act.stabilized) {
    throw std::invalid_argument(
        fmt::format("fixed_members: matrix does not stabilize the spread (member {} maps "
                    "off it)",
                    act.witness_member));
  }
  std::vector<u32> fixed;
  for (u32 i = 0; i < act.perm.size(); ++i) {
    if (act.perm[i] == i) fixed.push_back(i);
  }
  return fixed;
}

namespace {

std::vector<std::vector<u32>> generator_perms(const FqTables& fq, const MatGroup& g,
                                              const Spread& s) {
  std::vector<std::vector<u32>> perms;
  for (const auto& gen : g.generators) {
    SpreadAction act = map_spread(fq, gen, s);
    if (!act.stabilized) {
      throw std::invalid_argument(
          fmt::format("group generator does not stabilize the spread (member {} maps off it)",
                      act.witness_member));
    }
    perms.push_back(std::move(act.perm));
  }
  return perms;
}

std::vector<u64> orbit_partition_sizes(const std::vector<std::vector<u32>>& perms, size_t n) {
  std::vector<bool> seen(n, false);
  std::vector<u64> sizes;
  for (size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<u32> stack{static_cast<u32>(start)};
    seen[start] = true;
    u64 size = 0;
    while (!stack.empty()) {
      u32 cur = stack.back();
      stack.pop_back();
      ++size;
      for (const auto& p : perms) {
        u32 nxt = p[cur];
        if (!seen[nxt]) {
          seen[nxt] = true;
          stack.push_back(nxt);
        }
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

bool is_transitive_on_spread(const FqTables& fq, const MatGroup& g, const Spread& s) {
  auto perms = generator_perms(fq, g, s);
  auto sizes = orbit_partition_sizes(perms, s.members.size());
  return sizes.size() == 1 && sizes.front() == s.members.size();
}

std::vector<u64> spread_orbit_sizes(const FqTables& fq, const MatGroup& g, const Spread& s) {
  return orbit_partition_sizes(generator_perms(fq, g, s), s.members.size());
}

void write_spread(std::ostream& os, const Tower& t, const Spread& s) {
  os << s.p << ' ' << s.a << ' ' << s.m << ' ' << s.q << '\n';
  const auto& fq = t.fq();
  for (size_t i = 0; i < s.members.size(); ++i) {
    os << i;
    const Subspace& u = s.members[i];
    for (int r = 0; r < u.rows; ++r) {
      for (int c = 0; c < u.ambient; ++c) {
        os << ' ';
        auto digits = fq.digits(u.basis[static_cast<size_t>(r) * u.ambient + c]);
        for (size_t k = 0; k < digits.size(); ++k) {
          if (k) os << ',';
          os << static_cast<int>(digits[k]);
        }
      }
    }
    os << '\n';
  }
}

std::string spread_to_string(const Tower& t, const Spread& s) {
  std::ostringstream os;
  write_spread(os, t, s);
  return os.str();
}

SpreadFileHeader read_spread_header(std::istream& is) {
  SpreadFileHeader h;
  if (!(is >> h.p >> h.a >> h.m >> h.q)) {
    throw std::invalid_argument("spread file: malformed header, expected 'p a m q'");
  }
  return h;
}

Spread read_spread(const Tower& t, std::istream& is) {
  SpreadFileHeader h = read_spread_header(is);
  if (h.p != t.p() || h.a != t.a() || h.m != t.m() || h.q != t.q()) {
    throw std::invalid_argument("spread file: header does not match the tower parameters");
  }
  const auto& fq = t.fq();
  Spread s;
  s.p = h.p;
  s.a = h.a;
  s.m = h.m;
  s.q = h.q;

  const u64 expected = t.qm() + 1;
  const int dim = t.dim();
  for (u64 line = 0; line < expected; ++line) {
    u64 idx;
    if (!(is >> idx)) throw std::invalid_argument("spread file: truncated member list");
    if (idx != line) {
      throw std::invalid_argument(
          fmt::format("spread file: expected member index {}, found {}", line, idx));
    }
    std::vector<VecQ> rows;
    for (int r = 0; r < t.m(); ++r) {
      VecQ row(static_cast<size_t>(dim), 0);
      for (int c = 0; c < dim; ++c) {
        std::string tok;
        if (!(is >> tok)) throw std::invalid_argument("spread file: truncated member row");
        std::vector<u8> digits;
        size_t pos = 0;
        while (pos <= tok.size()) {
          size_t comma = tok.find(',', pos);
          std::string part = tok.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos);
          if (part.empty()) throw std::invalid_argument("spread file: empty digit");
          int value = std::stoi(part);
          if (value < 0 || value >= t.p()) {
            throw std::invalid_argument("spread file: digit out of range");
          }
          digits.push_back(static_cast<u8>(value));
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
        if (static_cast<int>(digits.size()) != t.a()) {
          throw std::invalid_argument("spread file: coordinate tuple has wrong length");
        }
        row[static_cast<size_t>(c)] = fq.from_digits(digits);
      }
      rows.push_back(std::move(row));
    }
    s.members.push_back(rref_subspace(fq, rows, dim));
  }
  return s;
}

}  // namespace symspread
