#include "athero/params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <variant>

namespace athero {

double ModelParams::diffusion(int s) const {
  switch (s) {
    case 0: return 1.0;
    case 1: return d2;
    case 2: return d3;
    case 3: return d4;
    case 4: return std::pow(eps, tau1);
    case 5: return std::pow(eps, tau2);
    default: throw std::out_of_range("species index out of range");
  }
}

double ModelParams::gamma(int k) const { return std::pow(eps, rho(k)) * eta(k); }

bool ValidationReport::has(std::string_view constraint) const {
  for (const auto& v : violations) {
    if (v.constraint == constraint) return true;
  }
  return false;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) os << "  violated: " << v.constraint << " (" << v.detail << ")\n";
  return os.str();
}

namespace {

class Checker {
 public:
  explicit Checker(ValidationReport& r) : report_(r) {}

  void require(bool ok, std::string constraint, double value) {
    if (ok) return;
    std::ostringstream os;
    os << std::setprecision(10) << "value " << value;
    report_.violations.push_back({std::move(constraint), os.str()});
  }

  void positive(const std::string& name, double v) { require(std::isfinite(v) && v > 0.0, name + " > 0", v); }

 private:
  ValidationReport& report_;
};

}  // namespace

ValidationReport validate(const ModelParams& p) {
  ValidationReport r;
  Checker c(r);
  for (int i = 1; i <= 11; ++i) c.positive("mu" + std::to_string(i), p.mu(i));
  for (int i = 1; i <= 9; ++i) c.positive("lambda" + std::to_string(i), p.lambda(i));
  for (int i = 3; i <= 6; ++i) c.positive("delta" + std::to_string(i), p.delta(i));
  for (int i = 1; i <= 5; ++i) c.positive("eta" + std::to_string(i), p.eta(i));
  c.positive("d2", p.d2);
  c.positive("d3", p.d3);
  c.positive("d4", p.d4);

  c.require(p.mu(3) < p.mu(2), "mu3 < mu2", p.mu(3));
  c.require(p.lambda(2) < p.lambda(1), "lambda2 < lambda1", p.lambda(2));
  c.require(p.mu(5) < p.mu(4), "mu5 < mu4", p.mu(5));
  c.require(p.mu(8) < p.mu(6), "mu8 < mu6", p.mu(8));
  c.require(p.lambda(3) < 1.0, "lambda3 < 1", p.lambda(3));
  c.require(p.lambda(5) < 1.0, "lambda5 < 1", p.lambda(5));

  c.require(p.p1 > 1.0, "p1 > 1", p.p1);
  c.require(p.p2 > 1.0, "p2 > 1", p.p2);
  c.require(p.p3 > 1.0, "p3 > 1", p.p3);

  c.require(p.tau1 >= 3.0, "3 <= tau1", p.tau1);
  c.require(p.tau1 < p.tau2, "tau1 < tau2", p.tau2);
  c.require(p.tau2 < 2.0 * p.tau1, "tau2 < 2*tau1", p.tau2);

  for (int i = 1; i <= 5; ++i) c.require(p.rho(i) >= 1.0, "rho" + std::to_string(i) + " >= 1", p.rho(i));
  c.require(p.eps > 0.0 && p.eps < 1.0, "0 < eps < 1", p.eps);
  c.require(p.ell > 0.0, "ell > 0", p.ell);
  c.require(p.T > 0.0, "T > 0", p.T);
  return r;
}

ValidationReport validate(const Scenario& s) {
  ValidationReport r = validate(s.model);
  Checker c(r);
  c.require(s.forcing.c2 >= 0.0, "c2 >= 0", s.forcing.c2);
  c.require(s.forcing.psi0 >= 0.0, "psi0 >= 0", s.forcing.psi0);
  c.positive("ramp_time", s.forcing.ramp_time);

  const auto& pt = s.patches;
  c.require(pt.plateau >= 0.0 && pt.plateau <= 1.0, "0 <= plateau <= 1", pt.plateau);
  c.require(pt.omega_half_x1_frac > 0.0 && pt.omega_half_theta > 0.0, "omega half-widths > 0",
            std::min(pt.omega_half_x1_frac, pt.omega_half_theta));
  c.require(pt.omega_half_x1_frac <= pt.Omega_half_x1_frac && pt.omega_half_theta <= pt.Omega_half_theta,
            "omega inside Omega", pt.omega_half_x1_frac);
  c.require(pt.center_x1_frac - pt.Omega_half_x1_frac > 0.0 && pt.center_x1_frac + pt.Omega_half_x1_frac < 1.0,
            "Omega inside (0,ell)", pt.center_x1_frac);
  c.require(pt.center_theta - pt.Omega_half_theta > 0.0 &&
                pt.center_theta + pt.Omega_half_theta < 2.0 * std::numbers::pi,
            "Omega inside (0,2pi)", pt.center_theta);

  c.require(s.grid.n1 == 0 || s.grid.n1 >= 3, "n1 >= 3", s.grid.n1);
  c.require(s.grid.nxi >= 3, "nxi >= 3", s.grid.nxi);
  c.require(s.grid.nth == 0 || (s.grid.nth >= 4 && s.grid.nth % 2 == 0), "nth >= 4 and even", s.grid.nth);
  c.require(s.run.dt >= 0.0, "dt >= 0", s.run.dt);
  c.require(s.run.samples >= 1, "samples >= 1", s.run.samples);
  c.require(s.run.tol_pos >= 0.0, "tol_pos >= 0", s.run.tol_pos);
  c.require(s.run.audit_samples >= 1, "audit_samples >= 1", s.run.audit_samples);
  return r;
}

ValidationReport validate(const DimensionalParams& dp) {
  ValidationReport r;
  Checker c(r);
  c.positive("d_L", dp.d_L);
  c.positive("d_Lox", dp.d_Lox);
  c.positive("d_m", dp.d_m);
  c.positive("d_M2", dp.d_M2);
  c.positive("d_M1", dp.d_M1);
  c.positive("d_F", dp.d_F);
  c.positive("R", dp.R);
  c.positive("rho0", dp.rho0);
  c.positive("l", dp.l);
  c.positive("alpha0", dp.alpha0);
  c.positive("k0", dp.k0);
  c.require(dp.R >= 1e-2 && dp.R <= 1.0, "R in [1e-2, 1]", dp.R);
  const double ratio = dp.rho0 / dp.R;
  c.require(ratio >= 0.05 && ratio <= 0.20, "rho0/R in [0.05, 0.20]", ratio);
  return r;
}

NondimensionalScales from_dimensional(const DimensionalParams& dp) {
  const std::array<double, 11> all{dp.d_L, dp.d_Lox, dp.d_m, dp.d_M2, dp.d_M1, dp.d_F,
                                   dp.R,   dp.rho0,  dp.l,   dp.alpha0, dp.k0};
  for (double v : all) {
    if (!(std::isfinite(v) && v > 0.0)) throw std::invalid_argument("dimensional parameters must be positive");
  }
  NondimensionalScales s;
  s.eps = dp.rho0 / dp.R;
  if (!(s.eps > 0.0 && s.eps < 1.0)) throw std::invalid_argument("eps = rho0/R must lie in (0,1)");
  s.ell = dp.l / dp.R;
  s.d = {dp.d_Lox / dp.d_L, dp.d_m / dp.d_L, dp.d_M2 / dp.d_L, dp.d_M1 / dp.d_L, dp.d_F / dp.d_L};
  s.gamma1 = dp.R * dp.alpha0 / (dp.d_L * dp.k0);
  s.tau1 = std::log(s.d[3]) / std::log(s.eps);
  s.tau2 = std::log(s.d[4]) / std::log(s.eps);
  s.time_scale = dp.d_L / (dp.R * dp.R);
  return s;
}

// ---------------------------------------------------------------------------
// Config file

namespace {

using Slot = std::variant<double*, int*, std::uint64_t*, std::array<double, 5>*>;

struct Key {
  std::string name;
  Slot slot;
};

std::vector<Key> key_table(Scenario& s) {
  std::vector<Key> keys;
  auto& m = s.model;
  for (int i = 0; i < 11; ++i) keys.push_back({"mu" + std::to_string(i + 1), &m.mu_v[i]});
  for (int i = 0; i < 9; ++i) keys.push_back({"lambda" + std::to_string(i + 1), &m.lambda_v[i]});
  for (int i = 0; i < 4; ++i) keys.push_back({"delta" + std::to_string(i + 3), &m.delta_v[i]});
  for (int i = 0; i < 5; ++i) keys.push_back({"eta" + std::to_string(i + 1), &m.eta_v[i]});
  for (int i = 0; i < 5; ++i) keys.push_back({"rho" + std::to_string(i + 1), &m.rho_v[i]});
  keys.push_back({"rho", &m.rho_v});
  keys.push_back({"p1", &m.p1});
  keys.push_back({"p2", &m.p2});
  keys.push_back({"p3", &m.p3});
  keys.push_back({"d2", &m.d2});
  keys.push_back({"d3", &m.d3});
  keys.push_back({"d4", &m.d4});
  keys.push_back({"tau1", &m.tau1});
  keys.push_back({"tau2", &m.tau2});
  keys.push_back({"eps", &m.eps});
  keys.push_back({"ell", &m.ell});
  keys.push_back({"T", &m.T});
  keys.push_back({"c2", &s.forcing.c2});
  keys.push_back({"psi0", &s.forcing.psi0});
  keys.push_back({"ramp_time", &s.forcing.ramp_time});
  keys.push_back({"patch_center_x1_frac", &s.patches.center_x1_frac});
  keys.push_back({"patch_center_theta", &s.patches.center_theta});
  keys.push_back({"omega_half_x1_frac", &s.patches.omega_half_x1_frac});
  keys.push_back({"omega_half_theta", &s.patches.omega_half_theta});
  keys.push_back({"Omega_half_x1_frac", &s.patches.Omega_half_x1_frac});
  keys.push_back({"Omega_half_theta", &s.patches.Omega_half_theta});
  keys.push_back({"patch_plateau", &s.patches.plateau});
  keys.push_back({"n1", &s.grid.n1});
  keys.push_back({"nxi", &s.grid.nxi});
  keys.push_back({"nth", &s.grid.nth});
  keys.push_back({"dt", &s.run.dt});
  keys.push_back({"samples", &s.run.samples});
  keys.push_back({"tol_pos", &s.run.tol_pos});
  keys.push_back({"seed", &s.run.seed});
  keys.push_back({"audit_samples", &s.run.audit_samples});
  return keys;
}

std::string_view trim(std::string_view v) {
  const auto b = v.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = v.find_last_not_of(" \t\r");
  return v.substr(b, e - b + 1);
}

double parse_double(std::string_view text, const std::string& where) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(where + ": not a number: '" + std::string(text) + "'");
  return value;
}

template <class Int>
Int parse_int(std::string_view text, const std::string& where) {
  Int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(where + ": not an integer: '" + std::string(text) + "'");
  return value;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  auto keys = key_table(s);
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    auto it = std::find_if(keys.begin(), keys.end(), [&](const Key& k) { return k.name == key; });
    if (it == keys.end()) throw ConfigError(where + ": unknown key '" + key + "'");
    std::visit(
        [&](auto* target) {
          using T = std::remove_pointer_t<decltype(target)>;
          if constexpr (std::is_same_v<T, double>) {
            *target = parse_double(value, where);
          } else if constexpr (std::is_same_v<T, int>) {
            *target = parse_int<int>(value, where);
          } else if constexpr (std::is_same_v<T, std::uint64_t>) {
            *target = parse_int<std::uint64_t>(value, where);
          } else {
            target->fill(parse_double(value, where));
          }
        },
        it->slot);
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string to_config_text(const Scenario& scenario) {
  Scenario copy = scenario;
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto& k : key_table(copy)) {
    if (k.name == "rho") continue;
    std::visit(
        [&](auto* target) {
          using T = std::remove_pointer_t<decltype(target)>;
          if constexpr (!std::is_same_v<T, std::array<double, 5>>) os << k.name << " = " << *target << '\n';
        },
        k.slot);
  }
  return os.str();
}

std::uint64_t config_hash(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace athero
