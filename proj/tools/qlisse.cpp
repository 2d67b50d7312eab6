// Command-line driver: singular vectors, classification, quasi-lisse check.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "qlisse/c2/c2.hpp"
#include "qlisse/zhu/zhu.hpp"

using namespace qlisse;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 2;
constexpr int kExitUncertified = 3;

struct RunConfig {
  std::optional<int> m;
  std::string k;
  int degree = 0;
  std::string cache = ".qlisse-cache";
  std::size_t primes = 256;
  std::string format = "text";

  va::VAConfig level() const {
    if (!k.empty()) {
      auto cfg = va::VAConfig::from_level(parse_rational(k));
      if (m) cfg.m = *m;
      return cfg;
    }
    return va::VAConfig::from_m(m.value_or(1));
  }
  int singular_degree(const va::VAConfig& cfg) const {
    if (degree > 0) return degree;
    if (cfg.m < 0) throw std::invalid_argument("--degree is required with --k");
    return cfg.singular_degree();
  }
  bool experimental(const va::VAConfig& cfg) const { return cfg.m != 0 && cfg.m != 1; }
};

const lie::WeightOmega kTopWeight{2, 0, 0, 0};

std::string cache_path(const RunConfig& rc, const va::VAConfig& cfg, int d) {
  std::string k = qlisse::to_string(cfg.k);
  for (auto& c : k)
    if (c == '/') c = '_';
  return (fs::path(rc.cache) / ("singvec_k" + k + "_d" + std::to_string(d) + ".txt")).string();
}

struct Located {
  sing::SingvecFile file;
  std::size_t nullity = 1;
  bool from_cache = false;
};

/// Loads a verified vector from the cache, or solves and stores it.
std::optional<Located> obtain_singular(const RunConfig& rc, va::ModeEngine& engine, std::ostream& log) {
  const auto& cfg = engine.config();
  int d = rc.singular_degree(cfg);
  std::string path = cache_path(rc, cfg, d);
  if (fs::exists(path)) {
    try {
      auto f = sing::load_singvec(path);
      if (f.k == cfg.k && f.degree == d && f.weight == kTopWeight && sing::annihilated(engine, f.vector)) {
        log << "loaded " << path << '\n';
        return Located{std::move(f), 1, true};
      }
      log << "ignoring stale cache " << path << '\n';
    } catch (const std::exception& e) {
      log << "ignoring unreadable cache " << path << ": " << e.what() << '\n';
    }
  }
  sing::SolveOptions opt;
  opt.max_primes = rc.primes;
  auto res = sing::find_singular(engine, d, kTopWeight, opt);
  log << "constraints " << res.rows << " x " << res.columns << ", nullity " << res.vectors.size() << '\n';
  if (res.vectors.empty()) return std::nullopt;
  Located out{{cfg.k, d, kTopWeight, res.vectors.front()}, res.vectors.size(), false};
  fs::create_directories(rc.cache);
  sing::save_singvec(path, out.file);
  log << "wrote " << path << '\n';
  return out;
}

json weight_json(const lie::WeightOmega& w) {
  json o = json::array();
  for (const auto& c : w) o.push_back(qlisse::to_string(c));
  return {{"omega", o}, {"dominant_integral", lie::is_dominant_integral(w)}};
}

json poly_json(const zhu::PolynomialSet& s) {
  json out = json::array();
  for (const auto& p : s.polys) out.push_back({{"label", p.label}, {"terms", poly::to_text(p.p)}});
  return out;
}

void print_polys(const zhu::PolynomialSet& s) {
  for (const auto& p : s.polys) std::cout << "# " << p.label << '\n' << poly::to_text(p.p);
}

int cmd_find(const RunConfig& rc) {
  auto cfg = rc.level();
  if (rc.experimental(cfg)) std::cerr << "warning: experimental level\n";
  va::ModeEngine engine(cfg);
  auto v = obtain_singular(rc, engine, std::cerr);
  int d = rc.singular_degree(cfg);
  if (rc.format == "json") {
    json o{{"k", qlisse::to_string(cfg.k)}, {"degree", d}, {"weight", weight_json(kTopWeight)["omega"]},
           {"nullity", v ? v->nullity : 0}, {"support", v ? v->file.vector.size() : 0},
           {"cache", cache_path(rc, cfg, d)}};
    std::cout << o.dump(2) << '\n';
  } else {
    std::cout << "k " << qlisse::to_string(cfg.k) << "\ndegree " << d << "\nnullity " << (v ? v->nullity : 0)
              << "\nsupport " << (v ? v->file.vector.size() : 0) << '\n';
  }
  return v ? kExitOk : kExitVerify;
}

int cmd_verify(const std::string& path) {
  sing::SingvecFile f;
  try {
    f = sing::load_singvec(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerify;
  }
  bool ok = sing::verify_singular(f.vector, va::VAConfig::from_level(f.k), f.degree, f.weight);
  std::cout << "support " << f.vector.size() << "\nsingular " << (ok ? "yes" : "no") << '\n';
  return ok ? kExitOk : kExitVerify;
}

std::optional<std::array<va::VAElement, 3>> orbit_for(const RunConfig& rc, va::ModeEngine& engine) {
  auto v = obtain_singular(rc, engine, std::cerr);
  if (!v) return std::nullopt;
  return sing::sigma_orbit(v->file.vector, engine);
}

int cmd_classify(const RunConfig& rc, const std::string& out_file) {
  auto cfg = rc.level();
  va::ModeEngine engine(cfg);
  auto orbit = orbit_for(rc, engine);
  if (!orbit) {
    std::cerr << "error: no singular vector\n";
    return kExitVerify;
  }
  auto ps = zhu::full_polynomial_system(*orbit, cfg);
  auto c = zhu::classify(ps);
  json weights = json::array();
  for (const auto& w : c.weights) weights.push_back(weight_json(w));
  if (!out_file.empty()) {
    std::ofstream os(out_file);
    os << weights.dump(2) << '\n';
  }
  const auto& cert = c.certificate;
  if (rc.format == "json") {
    json dom = json::array();
    for (const auto& w : c.dominant_integral) dom.push_back(weight_json(w));
    json o{{"k", qlisse::to_string(cfg.k)},
           {"scale", qlisse::to_string(ps.scale)},
           {"polynomials", poly_json(ps)},
           {"weights", weights},
           {"dominant_integral", dom},
           {"certificate",
            {{"D", cert.D},
             {"D_with_multiplicity", cert.D_with_multiplicity},
             {"found", cert.found},
             {"zero_dimensional", cert.zero_dimensional},
             {"certified", cert.certified},
             {"residual_factors", cert.residual_factors.size()}}}};
    std::cout << o.dump(2) << '\n';
  } else {
    print_polys(ps);
    std::cout << "# weights " << c.weights.size() << '\n';
    for (const auto& w : c.weights) std::cout << lie::to_string(w) << '\n';
    std::cout << "# dominant integral " << c.dominant_integral.size() << '\n';
    for (const auto& w : c.dominant_integral) std::cout << lie::to_string(w) << '\n';
    std::cout << "# certificate D=" << cert.D << " D_with_multiplicity=" << cert.D_with_multiplicity
              << " found=" << cert.found << " certified=" << (cert.certified ? "true" : "false") << '\n';
  }
  return cert.certified ? kExitOk : kExitUncertified;
}

int cmd_quasilisse(const RunConfig& rc) {
  auto cfg = rc.level();
  va::ModeEngine engine(cfg);
  auto orbit = orbit_for(rc, engine);
  if (!orbit) {
    std::cerr << "error: no singular vector\n";
    return kExitVerify;
  }
  zhu::UEAlgebra uea;
  zhu::ZhuProjector zp(engine, uea);
  Rational scale = zhu::normalizing_scale(zhu::extract_p(uea, zp((*orbit)[0]), 1));
  auto qs = c2::full_q_system(*orbit, scale);
  bool verdict = c2::nilpotent_cone_check(qs);
  if (rc.format == "json") {
    json o{{"k", qlisse::to_string(cfg.k)}, {"polynomials", poly_json(qs)}, {"origin_only", verdict}};
    std::cout << o.dump(2) << '\n';
  } else {
    print_polys(qs);
    std::cout << "# origin_only " << (verdict ? "true" : "false") << '\n';
  }
  return verdict ? kExitOk : kExitVerify;
}

int cmd_selftest() {
  bool ok = true;
  auto check = [&](bool c, const std::string& what) {
    std::cout << (c ? "ok   " : "FAIL ") << what << '\n';
    ok = ok && c;
  };
  const auto& s = lie::triality();
  check(s.preserves_brackets() && s.preserves_form(), "triality is an automorphism");
  check(s.power(3) == lie::Automorphism(), "triality has order three");
  auto cfg = va::VAConfig::from_m(0);
  va::ModeEngine engine(cfg);
  auto res = sing::find_singular(engine, 2, kTopWeight);
  check(res.vectors.size() == 1, "one singular vector at k=-2, degree 2");
  if (res.vectors.size() == 1) {
    auto orbit = sing::sigma_orbit(res.vectors[0], engine);
    auto c = zhu::classify(zhu::full_polynomial_system(orbit, cfg));
    check(c.weights.size() == 5 && c.certificate.certified, "five highest weights at k=-2");
    check(c2::nilpotent_cone_check(c2::full_q_system(orbit, 1)), "origin-only at k=-2");
  }
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlisse: singular vectors and highest weights for affine D4"};
  app.require_subcommand(1);
  RunConfig rc;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--m", rc.m, "level index, k = -6 + 4/(2m+1)");
    cmd->add_option("--k", rc.k, "explicit level as num/den");
    cmd->add_option("--degree", rc.degree, "conformal degree (needed with --k)");
    cmd->add_option("--cache", rc.cache, "cache directory");
    cmd->add_option("--primes", rc.primes, "maximum primes for modular solving");
    cmd->add_option("--format", rc.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  auto* singvec = app.add_subcommand("singvec", "find or verify the singular vector");
  singvec->require_subcommand(1);
  auto* find = singvec->add_subcommand("find", "compute and cache the singular vector");
  add_common(find);
  auto* verify = singvec->add_subcommand("verify", "re-check a cached vector");
  std::string verify_path;
  verify->add_option("file", verify_path, "cache file")->required();

  auto* classify = app.add_subcommand("classify", "highest weights of category O modules");
  add_common(classify);
  std::string out_file;
  classify->add_option("--out", out_file, "write the weight table as JSON");

  auto* quasi = app.add_subcommand("quasilisse", "C2 polynomials and the origin-only test");
  add_common(quasi);
  auto* selftest = app.add_subcommand("selftest", "quick consistency checks at k=-2");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*find) return cmd_find(rc);
    if (*verify) return cmd_verify(verify_path);
    if (*classify) return cmd_classify(rc, out_file);
    if (*quasi) return cmd_quasilisse(rc);
    if (*selftest) return cmd_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
