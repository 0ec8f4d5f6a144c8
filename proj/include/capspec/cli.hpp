#pragma once

// Command-line front end: domain ingestion, subcommand dispatch, and
// deterministic CSV/JSON emission. `run` is the whole program; tools/capspec.cpp
// only forwards argv to it.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "capspec/capacities.hpp"
#include "capspec/index_calculus.hpp"
#include "capspec/reeb_spectrum.hpp"
#include "capspec/toric_domain.hpp"

namespace capspec::cli {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- domains

namespace detail {

inline Scalar json_scalar(const nlohmann::json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const DomainError& e) {
      throw DomainError(path + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Scalar(v.get<long long>());
  throw DomainError(path + ": expected a rational string");
}

inline const nlohmann::json& json_field(const nlohmann::json& obj, const std::string& key,
                                        const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DomainError(path + "." + key + ": missing");
  return *it;
}

inline RationalVector json_vector(const nlohmann::json& v, const std::string& path) {
  if (!v.is_array()) throw DomainError(path + ": expected an array");
  RationalVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(json_scalar(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline int json_dim(const nlohmann::json& obj, const std::string& path) {
  const auto& v = json_field(obj, "n", path);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 1'000'000)
    throw DomainError(path + ".n: expected a positive integer");
  return static_cast<int>(v.get<long long>());
}

}  // namespace detail

/// Parses a JSON domain, e.g. {"type":"ellipsoid","a":["1","5/2"]}.
inline ToricRegion parse_domain(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("domain: expected a JSON object");
  const std::string p = "domain";
  const auto& type_field = detail::json_field(doc, "type", p);
  if (!type_field.is_string()) throw DomainError("domain.type: expected a string");
  const std::string type = type_field.get<std::string>();
  const std::string tp = type;  // error paths are rooted at the family name

  if (type == "ellipsoid")
    return ToricRegion::ellipsoid(detail::json_vector(detail::json_field(doc, "a", p), tp + ".a"));
  if (type == "polydisk")
    return ToricRegion::polydisk(detail::json_vector(detail::json_field(doc, "a", p), tp + ".a"));
  if (type == "ball" || type == "cube" || type == "cylinder") {
    Scalar a = detail::json_scalar(detail::json_field(doc, "a", p), tp + ".a");
    int n = detail::json_dim(doc, tp);
    if (a <= 0) throw DomainError(tp + ".a: must be positive");
    if (type == "ball") return ToricRegion::ball(a, n);
    if (type == "cube") return ToricRegion::cube(a, n);
    return ToricRegion::cylinder(a, n);
  }
  if (type == "ncyl") {
    Scalar d = detail::json_scalar(detail::json_field(doc, "delta", p), tp + ".delta");
    if (d <= 0) throw DomainError(tp + ".delta: must be positive");
    return ToricRegion::ncylinders(d, detail::json_dim(doc, tp));
  }
  if (type == "hrep") {
    const auto& normals = detail::json_field(doc, "normals", p);
    if (!normals.is_array()) throw DomainError("hrep.normals: expected an array");
    std::vector<RationalVector> rows;
    for (std::size_t i = 0; i < normals.size(); ++i)
      rows.push_back(detail::json_vector(normals[i], "hrep.normals[" + std::to_string(i) + "]"));
    RationalVector offsets = detail::json_vector(detail::json_field(doc, "offsets", p), "hrep.offsets");
    return ToricRegion::half_spaces(std::move(rows), std::move(offsets));
  }
  throw DomainError("domain.type: unknown family '" + type + "'");
}

/// Shorthand such as E(1,5/2), P(1,3), B(1), B^4(1), Z(1), C(2), N(1).
/// Families with one parameter take their dimension from ^2n or from `n`.
inline std::optional<ToricRegion> parse_shorthand(const std::string& text, std::optional<int> n) {
  static const std::regex shape(R"(^\s*([EPBCZN])(?:\^(\d+))?\(([^()]*)\)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, shape)) return std::nullopt;
  const char family = m[1].str()[0];
  std::optional<int> dim = n;
  if (m[2].matched) {
    int real = std::stoi(m[2].str());
    if (real < 2 || real % 2 != 0)
      throw DomainError("domain: superscript must be an even real dimension");
    if (n && *n != real / 2) throw DomainError("domain: --n disagrees with superscript");
    dim = real / 2;
  }
  RationalVector params;
  std::stringstream ss(m[3].str());
  for (std::string item; std::getline(ss, item, ',');) params.push_back(parse_rational(item));
  if (params.empty()) throw DomainError("domain: missing parameters");

  if (family == 'E' || family == 'P') {
    if (params.size() == 1 && dim && *dim > 1) params.assign(static_cast<std::size_t>(*dim), params[0]);
    if (dim && static_cast<int>(params.size()) != *dim)
      throw DomainError("domain: dimension disagrees with parameter count");
    return family == 'E' ? ToricRegion::ellipsoid(params) : ToricRegion::polydisk(params);
  }
  if (params.size() != 1) throw DomainError("domain: family takes a single parameter");
  if (!dim) throw DomainError("domain: --n is required for this family");
  switch (family) {
    case 'B': return ToricRegion::ball(params[0], *dim);
    case 'C': return ToricRegion::cube(params[0], *dim);
    case 'Z': return ToricRegion::cylinder(params[0], *dim);
    default: return ToricRegion::ncylinders(params[0], *dim);
  }
}

/// --domain accepts inline JSON, shorthand, or a path to a JSON file.
inline ToricRegion load_domain(const std::string& arg, std::optional<int> n) {
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return parse_domain(arg);
  if (auto r = parse_shorthand(arg, n)) return *r;
  std::ifstream in(arg);
  if (!in) throw DomainError("domain: '" + arg + "' is neither JSON, shorthand, nor a readable file");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_domain(text);
}

// ---------------------------------------------------------------- emission

enum class Format { csv, json };

inline std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline std::string value_cell(const CapacityValue& c) {
  if (c.value) return to_string(*c.value);
  return "~" + fixed6(c.approx.value_or(0.0));
}

/// c_vol prints the exact ratio with its root and a six-decimal
/// approximation, e.g. "2^(1/2)~1.414214".
inline std::string c_vol_cell(const CapacityValue& c, int n) {
  if (c.value) return to_string(*c.value);
  if (c.volume_ratio)
    return to_string(*c.volume_ratio) + "^(1/" + std::to_string(n) + ")~" + fixed6(*c.approx);
  return "~" + fixed6(*c.approx);
}

inline std::string k_cell(const CapacityValue& c) { return c.k ? std::to_string(*c.k) : ""; }

inline void emit_capacity_rows(const std::vector<CapacityValue>& rows, int n, Format f,
                               const std::string& domain, std::ostream& out) {
  if (f == Format::csv) {
    out << "name,k,value,status,anchor\n";
    for (const auto& c : rows)
      out << to_string(c.name) << ',' << k_cell(c) << ','
          << (c.name == CapacityName::c_vol ? c_vol_cell(c, n) : value_cell(c)) << ','
          << to_string(c.status) << ',' << c.anchor << '\n';
    return;
  }
  Json doc;
  doc["domain"] = domain;
  doc["rows"] = Json::array();
  for (const auto& c : rows) {
    Json r;
    r["name"] = to_string(c.name);
    r["k"] = c.k ? Json(*c.k) : Json(nullptr);
    r["value"] = c.name == CapacityName::c_vol ? c_vol_cell(c, n) : value_cell(c);
    if (c.volume_ratio) r["ratio"] = to_string(*c.volume_ratio);
    if (c.approx) r["approx"] = fixed6(*c.approx);
    r["status"] = to_string(c.status);
    r["anchor"] = c.anchor;
    r["witness"] = c.witness;
    doc["rows"].push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

inline void emit_spectrum(const Spectrum& s, Format f, const std::string& domain, std::ostream& out) {
  if (f == Format::csv) {
    out << "k,j,m,action,cz\n";
    for (const auto& e : s.entries)
      out << e.k << ',' << e.orbit.j << ',' << e.orbit.m << ',' << to_string(e.action) << ','
          << e.cz << '\n';
    return;
  }
  Json doc;
  doc["domain"] = domain;
  doc["degenerate"] = s.degenerate;
  doc["rows"] = Json::array();
  for (const auto& e : s.entries)
    doc["rows"].push_back(Json{{"k", e.k},
                               {"j", e.orbit.j},
                               {"m", e.orbit.m},
                               {"action", to_string(e.action)},
                               {"cz", e.cz}});
  out << doc.dump(2) << '\n';
}

inline void emit_chain(const CapacityReport& rep, Format f, std::ostream& out) {
  const std::string gap = rep.inf_gap ? to_string(*rep.inf_gap) : "";
  if (f == Format::csv) {
    out << "k,cgh_k,cgh_upper,status,ratio,n_bound,ok\n";
    for (const auto& r : rep.per_k)
      out << r.k << ',' << to_string(r.cgh_value) << ','
          << (r.cgh_upper ? to_string(*r.cgh_upper) : "") << ',' << to_string(r.cgh_status) << ','
          << to_string(r.ratio) << ',' << to_string(r.n_bound) << ',' << (r.ok ? "true" : "false")
          << '\n';
    out << "chain_ok," << (rep.chain_ok ? "true" : "false") << ",inf_gap," << gap << '\n';
    return;
  }
  Json doc;
  doc["domain"] = rep.domain.describe();
  doc["k_max"] = rep.k_max;
  doc["rows"] = Json::array();
  for (const auto& c : rep.rows)
    doc["rows"].push_back(Json{{"name", to_string(c.name)},
                               {"k", c.k ? Json(*c.k) : Json(nullptr)},
                               {"value", value_cell(c)},
                               {"status", to_string(c.status)},
                               {"anchor", c.anchor},
                               {"witness", c.witness}});
  doc["per_k"] = Json::array();
  for (const auto& r : rep.per_k)
    doc["per_k"].push_back(Json{{"k", r.k},
                                {"cgh_k", to_string(r.cgh_value)},
                                {"cgh_upper", r.cgh_upper ? Json(to_string(*r.cgh_upper)) : Json(nullptr)},
                                {"status", to_string(r.cgh_status)},
                                {"ratio", to_string(r.ratio)},
                                {"n_bound", to_string(r.n_bound)},
                                {"ok", r.ok}});
  doc["chain_ok"] = rep.chain_ok;
  doc["inf_gap"] = rep.inf_gap ? Json(gap) : Json(nullptr);
  doc["inf_k"] = rep.inf_k ? Json(*rep.inf_k) : Json(nullptr);
  out << doc.dump(2) << '\n';
}

inline void emit_domain_info(const ToricRegion& r, const std::optional<VolumeResult>& vol,
                             Format f, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("domain", r.describe());
  rows.emplace_back("n", std::to_string(r.dimension()));
  try {
    rows.emplace_back("diagonal", to_string(diagonal(r)));
  } catch (const DomainError&) {
    rows.emplace_back("diagonal", "unbounded");
  }
  rows.emplace_back("convex", is_convex_toric(r) ? "true" : "false");
  rows.emplace_back("concave", is_concave_toric(r) ? "true" : "false");
  rows.emplace_back("bounded", r.bounded() ? "true" : "false");
  if (vol) {
    if (vol->exact) {
      rows.emplace_back("volume", to_string(vol->value));
    } else {
      rows.emplace_back("volume", "~" + fixed6(vol->estimate));
      rows.emplace_back("volume_half_width", fixed6(vol->half_width));
      rows.emplace_back("volume_seed", std::to_string(vol->seed));
      rows.emplace_back("volume_samples", std::to_string(vol->samples));
    }
  } else {
    rows.emplace_back("volume", "infinite");
  }
  if (auto d = convexity_diagnostic(r)) rows.emplace_back("diagnostic", *d);

  if (f == Format::csv) {
    out << "property,value\n";
    for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
    return;
  }
  Json doc;
  for (const auto& [k, v] : rows) doc[k] = v;
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------- dispatch

/// Runs one command. stdout gets data, stderr diagnostics. Exit codes:
/// 0 success, 2 invalid input, 3 degenerate spectrum, 4 unsupported query.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"capspec: exact symplectic capacities of toric domains"};
  app.require_subcommand(1);

  std::string domain_arg;
  std::optional<int> n_opt;
  std::string format_name = "csv";
  std::optional<std::uint64_t> seed_opt;
  std::int64_t k_max = 1;
  std::optional<std::string> cap_text;
  std::optional<std::int64_t> count;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_domain = [&](CLI::App* sub) {
    sub->add_option("--domain", domain_arg, "JSON text, JSON file, or shorthand like E(1,5/2)")
        ->required();
    sub->add_option("--n", n_opt, "complex dimension for single-parameter families");
  };

  auto* info = app.add_subcommand("domain-info", "diagonal, convexity, volume");
  add_domain(info);
  add_format(info);
  info->add_option("--seed", seed_opt, "Monte Carlo seed (half-space regions)");

  auto* spec = app.add_subcommand("spectrum", "Reeb spectrum of an ellipsoid boundary");
  add_domain(spec);
  add_format(spec);
  auto* cap_opt = spec->add_option("--cap", cap_text, "action cap (rational)");
  auto* count_opt = spec->add_option("--count", count, "number of orbits");
  std::optional<std::int64_t> degree_k;
  auto* k_opt = spec->add_option("--k", degree_k, "only the orbit with cz = n - 1 + 2k");
  cap_opt->excludes(count_opt);
  k_opt->excludes(cap_opt)->excludes(count_opt);

  auto* caps = app.add_subcommand("capacities", "capacity values with status");
  add_domain(caps);
  add_format(caps);
  caps->add_option("--kmax", k_max, "largest k for cgh_k")->check(CLI::PositiveNumber);
  caps->add_option("--seed", seed_opt, "Monte Carlo seed (half-space regions)");

  auto* chain = app.add_subcommand("chain", "verify the capacity inequality chain");
  add_domain(chain);
  add_format(chain);
  chain->add_option("--kmax", k_max, "largest k")->check(CLI::PositiveNumber);

  std::vector<std::string> thetas, block_areas;
  std::string duration_text = "1";
  auto* cz = app.add_subcommand("cz", "Conley-Zehnder index of rotation blocks (direct sum)");
  cz->add_option("--theta", thetas, "rotation per unit time, in turns (repeatable)");
  cz->add_option("--a", block_areas, "block S = (2 pi / a) Id (repeatable)");
  cz->add_option("--T", duration_text, "duration");

  std::int64_t vd_n = 0, p_plus = 0, p_minus = 0, c1 = 0, cz_plus = 0, cz_minus = 0;
  std::optional<std::int64_t> tangency, genus;
  auto* vd = app.add_subcommand("virdim", "virtual dimension / Fredholm index arithmetic");
  vd->add_option("--n", vd_n, "complex dimension")->required();
  vd->add_option("--p-plus", p_plus, "positive punctures (or all punctures with --genus)");
  vd->add_option("--p-minus", p_minus, "negative punctures");
  vd->add_option("--c1", c1, "relative first Chern number");
  vd->add_option("--cz-plus", cz_plus, "sum of cz at positive ends");
  vd->add_option("--cz-minus", cz_minus, "sum of cz at negative ends");
  vd->add_option("--k", tangency, "tangency order");
  vd->add_option("--genus", genus, "Riemann-Roch index on a genus-g surface instead");

  std::vector<std::string> amin_areas;
  auto* amin = app.add_subcommand("amin", "minimal area of a product torus");
  amin->add_option("--a", amin_areas, "areas (repeatable, or comma separated)")
      ->required()
      ->delimiter(',');

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const Format fmt = format_name == "json" ? Format::json : Format::csv;
  if (const char* env = std::getenv("CAPSPEC_SEED"); env != nullptr && *env != '\0') {
    try {
      seed_opt = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: CAPSPEC_SEED is not an unsigned integer\n";
      return 2;
    }
  }
  const std::uint64_t seed = seed_opt.value_or(kDefaultVolumeSeed);

  try {
    if (info->parsed()) {
      ToricRegion r = load_domain(domain_arg, n_opt);
      std::optional<VolumeResult> vol;
      if (r.bounded()) vol = volume(r, seed);
      emit_domain_info(r, vol, fmt, out);
    } else if (spec->parsed()) {
      ToricRegion r = load_domain(domain_arg, n_opt);
      auto areas = r.ellipsoid_areas();
      if (!areas) throw Unsupported("spectrum: domain must be an ellipsoid or a ball");
      if (!cap_text && !count && !degree_k)
        throw DomainError("spectrum: one of --cap, --count or --k is required");
      EllipsoidSpec e(*areas);
      Spectrum s;
      if (degree_k) {
        ReebOrbit g = orbit_of_degree(e, *degree_k);
        s.entries.push_back({g, action(e, g), cz_index(e, g), *degree_k});
      } else {
        s = cap_text ? enumerate_spectrum(e, parse_rational(*cap_text))
                     : enumerate_spectrum(e, *count);
      }
      if (s.degenerate) err << "warning: degenerate spectrum (tied actions)\n";
      emit_spectrum(s, fmt, r.describe(), out);
    } else if (caps->parsed()) {
      ToricRegion r = load_domain(domain_arg, n_opt);
      std::vector<CapacityValue> rows;
      if (r.bounded()) rows.push_back(c_vol(r, seed));
      rows.push_back(c_B_lower(r));
      rows.push_back(c_P(r));
      rows.push_back(c_L(r));
      if (auto conj = c_L_ellipsoid_conjecture(r)) rows.push_back(*conj);
      if (auto up = c_L_upper_bound(r, k_max)) rows.push_back(*up);
      for (std::int64_t k = 1; k <= k_max; ++k) {
        rows.push_back(cgh(r, k));
        if (auto up = cgh_upper_bound(r, k)) rows.push_back(*up);
      }
      emit_capacity_rows(rows, r.dimension(), fmt, r.describe(), out);
    } else if (chain->parsed()) {
      ToricRegion r = load_domain(domain_arg, n_opt);
      emit_chain(chain_report(r, k_max), fmt, out);
    } else if (cz->parsed()) {
      if (thetas.empty() && block_areas.empty())
        throw DomainError("cz: give at least one --theta or --a");
      const Scalar duration = parse_rational(duration_text);
      std::vector<std::int64_t> parts;
      for (const auto& t : thetas)
        parts.push_back(cz_exp_block({SymmetricBlock::identity_times(parse_rational(t)), duration}));
      for (const auto& a : block_areas)
        parts.push_back(cz_exp_block(BlockPath::from_area(parse_rational(a), duration)));
      out << cz_direct_sum(parts) << '\n';
    } else if (vd->parsed()) {
      if (genus)
        out << riemann_roch_index(vd_n, *genus, p_plus, c1, cz_plus, cz_minus) << '\n';
      else if (tangency)
        out << virdim_tangency(vd_n, p_plus, p_minus, c1, cz_plus, cz_minus, *tangency) << '\n';
      else
        out << virdim_punctured(vd_n, p_plus, p_minus, c1, cz_plus, cz_minus) << '\n';
    } else if (amin->parsed()) {
      RationalVector areas;
      for (const auto& a : amin_areas) areas.push_back(parse_rational(a));
      out << to_string(a_min_product_torus(areas).exact()) << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::out_of_range& e) {
    err << "error: number out of range: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace capspec::cli
