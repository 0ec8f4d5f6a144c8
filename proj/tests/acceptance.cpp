// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "capspec/capacities.hpp"
#include "capspec/cli.hpp"
#include "capspec/index_calculus.hpp"
#include "capspec/reeb_spectrum.hpp"
#include "oracles.hpp"

using namespace capspec;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;  // keep the first failure
    ok = ok && cond;
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // 0 for no runtime bound
  std::function<void(Check&)> body;
};

Scalar q(const char* s) { return parse_rational(s); }

// The shared corpus for criteria 3 and 4.
std::vector<RationalVector> generic_corpus() {
  std::mt19937_64 gen(20240601);
  std::vector<RationalVector> out;
  for (int t = 0; t < 50; ++t) out.push_back(oracle::random_generic_areas(gen, 1 + t % 4, 12, 20));
  return out;
}

void criterion_cgh_table(Check& c) {
  for (int n = 1; n <= 4; ++n)
    for (const char* d : {"1", "5/4", "7/3"})
      for (std::int64_t k = 1; k <= 10; ++k) {
        CapacityValue v = cgh(ToricRegion::ncylinders(q(d), n), k);
        c.expect(v.exact() == q(d) * (k + n - 1) && v.status == Status::theorem,
                 "N^" + std::to_string(2 * n) + "(" + d + ") k=" + std::to_string(k));
      }
}

// delta of a canonical half-space region: min over constraints of c_i / sum_j v_ij.
Scalar hrep_diagonal_oracle(const std::vector<RationalVector>& normals, const RationalVector& offsets) {
  std::optional<Scalar> best;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    Scalar s = 0;
    for (const auto& v : normals[i]) s += v;
    if (s > 0 && (!best || offsets[i] / s < *best)) best = offsets[i] / s;
  }
  return *best;
}

void criterion_c_l(Check& c) {
  for (int n = 1; n <= 6; ++n) {
    CapacityValue b = c_L(ToricRegion::ball(1, n));
    c.expect(b.exact() == Scalar(1, n) && b.status == Status::theorem, "ball n=" + std::to_string(n));
    CapacityValue z = c_L(ToricRegion::cylinder(1, n));
    c.expect(z.exact() == 1 && z.status == Status::theorem, "cylinder n=" + std::to_string(n));
  }
  std::mt19937_64 gen(7);
  for (int t = 0; t < 10; ++t) {
    std::vector<RationalVector> normals;
    RationalVector offsets;
    for (int i = 0; i < 1 + t % 4; ++i) {
      normals.push_back({oracle::random_rational(gen, 12, 3), oracle::random_rational(gen, 12, 3)});
      offsets.push_back(oracle::random_rational(gen, 12, 4));
    }
    auto h = ToricRegion::half_spaces(normals, offsets);
    CapacityValue v = c_L(h);
    c.expect(v.status == Status::theorem && v.exact() == hrep_diagonal_oracle(normals, offsets),
             "hrep " + h.describe());
  }
}

void criterion_degree_order(Check& c) {
  for (const auto& a : generic_corpus()) {
    EllipsoidSpec e(a);
    auto brute = oracle::first_orbits(a, 20);
    const auto n = static_cast<std::int64_t>(a.size());
    for (std::int64_t k = 1; k <= 20; ++k) {
      ReebOrbit g = orbit_of_degree(e, k);
      c.expect(action(e, g) == brute[static_cast<std::size_t>(k - 1)].action,
               ToricRegion::ellipsoid(a).describe() + " k=" + std::to_string(k) + " action");
      c.expect(oracle::cz_formula(a, g.j, g.m) == n - 1 + 2 * k,
               ToricRegion::ellipsoid(a).describe() + " k=" + std::to_string(k) + " cz");
    }
  }
}

void criterion_rank(Check& c) {
  for (const auto& a : generic_corpus()) {
    EllipsoidSpec e(a);
    const auto n = static_cast<std::int64_t>(a.size());
    for (std::int64_t k = 1; k <= 20; ++k) {
      c.expect(lch_rank(e, n - 1 + 2 * k) == 1, "rank at k=" + std::to_string(k));
      c.expect(lch_rank(e, n + 2 * k) == 0, "wrong parity at k=" + std::to_string(k));
    }
  }
}

void criterion_prop41(Check& c) {
  std::mt19937_64 gen(41);
  std::uniform_int_distribution<int> den(2, 12);
  int done = 0;
  while (done < 200) {
    const int d = den(gen);
    std::uniform_int_distribution<int> num(1, 10 * d - 1);
    const int p = num(gen);
    if (p % d == 0) continue;
    Scalar theta(p, d);
    std::int64_t fl = 0;
    while (Scalar(fl + 1) < theta) ++fl;  // floor by counting
    c.expect(cz_exp_block(BlockPath::rotation(theta)) == 1 + 2 * fl, "theta=" + to_string(theta));
    ++done;
  }
  done = 0;
  while (done < 50) {
    Scalar a1 = oracle::random_rational(gen, 12, 3);
    Scalar a_next = oracle::random_rational(gen, 12, 20);
    std::uniform_int_distribution<std::int64_t> mult(1, 10);
    const std::int64_t m = mult(gen);
    if (!(a1 * m < a_next)) continue;
    c.expect(normal_cz(EllipsoidSpec({a1}), a_next, {1, m}) == 1,
             "normal_cz a1=" + to_string(a1) + " a_next=" + to_string(a_next));
    ++done;
  }
}

void criterion_virdim(Check& c) {
  for (std::int64_t l = 1; l <= 5; ++l)
    for (std::int64_t m = 1; m <= 10; ++m)
      c.expect(virdim_tangency(l, 1, 0, 0, l - 1 + 2 * m, 0, m) == 0,
               "ellipsoid l=" + std::to_string(l) + " m=" + std::to_string(m));
  for (std::int64_t n = 1; n <= 6; ++n)
    for (std::int64_t p = 1; p <= 10; ++p)
      for (std::int64_t k = 1; k <= 6; ++k)
        c.expect(virdim_tangency(n, p, 0, 0, p * (n - 1), 0, k) == 2 * (p - 1 - k),
                 "punctures n=" + std::to_string(n) + " p=" + std::to_string(p));
}

void criterion_chain(Check& c) {
  const std::int64_t k_max = 10'000;
  for (const auto& a : {RationalVector{1, q("5/2")}, RationalVector{q("2/3"), q("9/7"), q("11/5")}}) {
    auto r = ToricRegion::ellipsoid(a);
    CapacityReport rep = chain_report(r, k_max);
    const Scalar bound = Scalar(static_cast<std::int64_t>(a.size())) *
                         *std::max_element(a.begin(), a.end()) / k_max;
    c.expect(rep.chain_ok, r.describe() + " chain_ok");
    c.expect(rep.inf_gap && *rep.inf_gap >= 0 && *rep.inf_gap <= bound,
             r.describe() + " inf_gap " + (rep.inf_gap ? to_string(*rep.inf_gap) : "none"));
  }
}

void criterion_amin(Check& c) {
  std::mt19937_64 gen(20240601);
  std::uniform_int_distribution<int> dim(1, 4);
  int outside_box = 0, exact_agree = 0;
  std::string first;
  for (int t = 0; t < 100; ++t) {
    RationalVector a;
    const int n = dim(gen);
    for (int i = 0; i < n; ++i) a.push_back(oracle::random_rational(gen, 12, 1));
    const Scalar fast = a_min_product_torus(a).exact();
    const auto boxed = oracle::min_positive_combination(a, 20);
    exact_agree += oracle::common_divisor_by_trial(a) == fast ? 1 : 0;
    if (boxed && *boxed == fast) continue;
    ++outside_box;
    if (first.empty()) {
      for (const auto& x : a) first += (first.empty() ? "(" : ",") + to_string(x);
      first += ") gives " + to_string(fast) + ", box gives " + (boxed ? to_string(*boxed) : "-");
    }
  }
  c.expect(outside_box == 0,
           std::to_string(outside_box) + "/100 vectors need |k_i| > 20, e.g. " + first +
               "; exact gcd oracle agrees on " + std::to_string(exact_agree) + "/100");
  c.expect(exact_agree == 100, "exact gcd oracle disagrees");
  for (const char* s : {"3/2", "1", "7/12"}) {
    RationalVector eq(3, q(s));
    c.expect(a_min_product_torus(eq).exact() == q(s), std::string("equal areas ") + s);
  }
}

std::vector<CapacityValue> theorem_capacities(const ToricRegion& r) {
  std::vector<CapacityValue> out = {c_P(r), c_L(r)};
  for (std::int64_t k = 1; k <= 5; ++k) out.push_back(cgh(r, k));
  std::erase_if(out, [](const CapacityValue& v) { return v.status != Status::theorem; });
  return out;
}

void criterion_axioms(Check& c) {
  std::mt19937_64 gen(9);
  std::uniform_int_distribution<int> grow(0, 4), pick(0, 1);
  for (int n = 1; n <= 3; ++n) {
    // 30 nested regions alternating ellipsoids and polydisks, then N(delta) on top.
    std::vector<ToricRegion> chain;
    RationalVector a;
    for (int i = 0; i < n; ++i) a.push_back(oracle::random_rational(gen, 12, 3));
    chain.push_back(ToricRegion::ellipsoid(a));
    while (chain.size() < 30) {
      RationalVector next;
      if (auto e = chain.back().ellipsoid_areas()) {
        for (const auto& x : *e) next.push_back(x * Scalar(12 + grow(gen), 12));
        chain.push_back(pick(gen) ? ToricRegion::polydisk(next) : ToricRegion::ellipsoid(next));
      } else {
        const RationalVector b = *chain.back().polydisk_areas();
        for (const auto& x : b)
          next.push_back(x * n * Scalar(12 + grow(gen), 12));
        chain.push_back(ToricRegion::ellipsoid(next));
      }
    }
    chain.push_back(ToricRegion::ncylinders(diagonal(chain.back()), n));

    for (std::size_t i = 0; i < chain.size(); ++i) {
      const auto& r = chain[i];
      Scalar alpha = oracle::random_rational(gen, 12, 4);
      auto base = theorem_capacities(r);
      auto scaled = theorem_capacities(scale(r, alpha));
      c.expect(base.size() == scaled.size(), "status changed under scaling " + r.describe());
      for (std::size_t j = 0; j < std::min(base.size(), scaled.size()); ++j)
        c.expect(scaled[j].exact() == alpha * base[j].exact(),
                 "conformality " + std::string(to_string(base[j].name)) + " " + r.describe());
      if (i == 0) continue;
      c.expect(includes(r, chain[i - 1]), "chain link " + chain[i - 1].describe() + " in " + r.describe());
      auto lo = theorem_capacities(chain[i - 1]);
      for (const auto& l : lo)
        for (const auto& h : base)
          if (l.name == h.name && l.k == h.k)
            c.expect(l.exact() <= h.exact(), "monotonicity " + std::string(to_string(l.name)) +
                                                 " " + chain[i - 1].describe() + " in " + r.describe());
    }
  }
  for (const auto& r : {ToricRegion::ellipsoid({1, q("5/2")}), ToricRegion::ncylinders(1, 2),
                        ToricRegion::ball(2, 3), ToricRegion::ellipsoid({q("2/3"), q("9/7"), q("11/5")}),
                        ToricRegion::cylinder(q("3/2"), 2)})
    c.expect(cgh_nondecreasing_check(r, 50), "nondecreasing " + r.describe());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string run_binary(const std::vector<std::string>& args) {
  std::string cmd = "'" CAPSPEC_CLI_PATH "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  std::string out;
  if (FILE* p = ::popen(cmd.c_str(), "r")) {
    char buf[4096];
    for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, got);
    if (::pclose(p) != 0) out += "\n<nonzero exit>";
  }
  return out;
}

void criterion_golden(Check& c) {
  const std::string dir = CAPSPEC_GOLDEN_DIR;
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"spectrum", {"spectrum", "--domain", "E(1,5/2)", "--cap", "4"}},
      {"capacities", {"capacities", "--domain", "B(1)", "--n", "2", "--kmax", "1"}},
      {"chain", {"chain", "--domain", "N(1)", "--n", "2", "--kmax", "3"}},
  };
  for (const auto& [file, base] : cases)
    for (const char* fmt : {"csv", "json"}) {
      auto args = base;
      args.insert(args.end(), {"--format", fmt});
      const std::string golden = slurp(dir + "/" + file + "." + fmt);
      const std::string tag = file + "." + fmt;
      c.expect(!golden.empty(), tag + " golden missing");
      for (int pass = 0; pass < 2; ++pass) {
        std::ostringstream out, err;
        c.expect(cli::run(args, out, err) == 0 && out.str() == golden, tag + " in-process run " +
                                                                           std::to_string(pass + 1));
        c.expect(run_binary(args) == golden, tag + " binary run " + std::to_string(pass + 1));
      }
    }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "cgh table of N^{2n}(delta)", 1.0, criterion_cgh_table},
      {2, "Lagrangian capacity values", 1.0, criterion_c_l},
      {3, "ellipsoid degree/order oracle", 5.0, criterion_degree_order},
      {4, "uniqueness and rank", 0.0, criterion_rank},
      {5, "rotation-block cz and normal cz", 0.0, criterion_prop41},
      {6, "virtual-dimension identities", 1.0, criterion_virdim},
      {7, "chain collapse at k_max = 10^4", 10.0, criterion_chain},
      {8, "A_min against bounded brute force", 0.0, criterion_amin},
      {9, "axiom suite", 0.0, criterion_axioms},
      {10, "CLI golden determinism", 0.0, criterion_golden},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0)
      c.expect(secs < cr.budget_s, "runtime " + std::to_string(secs) + " s over budget");
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3fs", secs);
    std::cout << (c.ok ? "PASS" : "FAIL") << "  " << cr.id << "  " << cr.name << "  (" << timing
              << ")";
    if (!c.ok) std::cout << "  first failure: " << c.detail;
    std::cout << '\n';
    failed += c.ok ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << '\n';
  return failed == 0 ? 0 : 1;
}
