#include "tgqsl/sta.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "tgqsl/error.hpp"

namespace tgqsl {

double hermite_even_moment(int n, int k) {
  require(n >= 0 && k >= 0, ErrorKind::invalid_argument, "moment indices must be non-negative");
  // y = (a + a^dagger)/sqrt(2) applied k times to |n>; <y^2k> = |y^k |n>|^2.
  const int dim = n + k + 2;
  std::vector<double> v(dim, 0.0), w(dim, 0.0);
  v[n] = 1.0;
  for (int step = 0; step < k; ++step) {
    std::fill(w.begin(), w.end(), 0.0);
    for (int m = 0; m < dim; ++m) {
      if (v[m] == 0.0) continue;
      if (m > 0) w[m - 1] += std::sqrt(static_cast<double>(m)) * v[m];
      if (m + 1 < dim) w[m + 1] += std::sqrt(static_cast<double>(m + 1)) * v[m];
    }
    for (int m = 0; m < dim; ++m) v[m] = w[m] / std::sqrt(2.0);
  }
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double quartic_coefficient(int n) {
  require(n >= 0, ErrorKind::invalid_argument, "state index must be non-negative");
  const double m = n;
  return 3.0 * (2.0 * m * m + 2.0 * m + 1.0) / 8.0;
}

namespace {

double factorial(int k) { return std::tgamma(k + 1.0); }

double binomial(int n, int k) { return std::round(factorial(n) / (factorial(k) * factorial(n - k))); }

/// Finite-sum expression for D with s = q - n and j starting at max(0, -s).
double printed_width_coefficient(int n, int q) {
  const int s = q - n;
  double sum = 0.0;
  for (int j = std::max(0, -s); j <= n; ++j) {
    const double c = binomial(n, j);
    sum += c * c * factorial(j) / (std::pow(2.0, j) * factorial(s + j));
  }
  return factorial(2 * q) * q * std::pow(2.0, n - 2 * q + 1) / (factorial(n) * (2.0 * n + 1.0)) * sum;
}

void check_indices(int n, int q) {
  require(n >= 0, ErrorKind::invalid_argument, "design index must be non-negative");
  require(q >= 1, ErrorKind::invalid_argument, "power-law exponent q must be >= 1");
}

}  // namespace

GeneralCoefficients general_coefficients(int n, int q) {
  check_indices(n, q);
  GeneralCoefficients g;
  g.moments.resize(q + 1);
  for (int k = 0; k <= q; ++k) g.moments[k] = hermite_even_moment(n, k);
  g.d = 2.0 * q * g.moments[q] / (2.0 * n + 1.0);
  g.printed_d = printed_width_coefficient(n, q);
  return g;
}

double scaling_fixed_point(int n, int q, double lambda) {
  check_indices(n, q);
  require(lambda > 0.0, ErrorKind::invalid_argument, "trap strength must be positive");
  const double d = general_coefficients(n, q).d;
  return std::pow(d * lambda, -1.0 / (2.0 * q + 2.0));
}

// ---------------------------------------------------------------- quintic

double ScalingPolynomial::value(double t) const noexcept {
  double r = 0.0;
  for (int i = 5; i >= 0; --i) r = r * t + c[i];
  return r;
}

double ScalingPolynomial::velocity(double t) const noexcept {
  double r = 0.0;
  for (int i = 5; i >= 1; --i) r = r * t + i * c[i];
  return r;
}

double ScalingPolynomial::acceleration(double t) const noexcept {
  double r = 0.0;
  for (int i = 5; i >= 2; --i) r = r * t + i * (i - 1) * c[i];
  return r;
}

ScalingPolynomial design_scaling(int n, int q, double lambda_i, double lambda_f, double t_f) {
  require(t_f > 0.0, ErrorKind::invalid_argument, "ramp duration must be positive");
  require(lambda_i > 0.0 && lambda_f > 0.0, ErrorKind::invalid_argument, "endpoint strengths must be positive");
  ScalingPolynomial p;
  p.t_f = t_f;
  p.n = n;
  p.q = q;
  p.lambda_i = lambda_i;
  p.lambda_f = lambda_f;
  const double a0 = scaling_fixed_point(n, q, lambda_i);
  const double a1 = scaling_fixed_point(n, q, lambda_f);

  Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
  Eigen::Matrix<double, 6, 1> rhs;
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  for (int i = 0; i < 6; ++i) {
    m(3, i) = std::pow(t_f, i);
    if (i >= 1) m(4, i) = i * std::pow(t_f, i - 1);
    if (i >= 2) m(5, i) = i * (i - 1) * std::pow(t_f, i - 2);
  }
  rhs << a0, 0.0, 0.0, a1, 0.0, 0.0;
  const Eigen::Matrix<double, 6, 1> sol = m.fullPivLu().solve(rhs);
  for (int i = 0; i < 6; ++i) p.c[i] = sol[i];
  if (lambda_f == lambda_i) {
    p.c.fill(0.0);
    p.c[0] = a0;
  }
  return p;
}

// ---------------------------------------------------------------- ramps

RampSchedule StaRamp::schedule() const { return RampSchedule::sampled(times, lambda); }

double StaRamp::endpoint_slope() const {
  const std::size_t k = times.size();
  if (k < 2) return 0.0;
  const double h = times[1] - times[0];
  return std::max(std::abs(lambda[1] - lambda[0]), std::abs(lambda[k - 1] - lambda[k - 2])) / h;
}

StaRamp ramp_from_scaling(const ScalingPolynomial& poly, int samples) {
  require(samples >= 4, ErrorKind::invalid_argument, "ramp needs at least 4 samples");
  require(poly.t_f > 0.0, ErrorKind::invalid_argument, "ramp duration must be positive");
  const double d = general_coefficients(poly.n, poly.q).d;
  StaRamp r;
  r.n = poly.n;
  r.q = poly.q;
  r.lambda_i = poly.lambda_i;
  r.lambda_f = poly.lambda_f;
  r.t_f = poly.t_f;
  r.times.resize(samples);
  r.lambda.resize(samples);
  for (int k = 0; k < samples; ++k) {
    const double t = k == samples - 1 ? poly.t_f : poly.t_f * k / (samples - 1.0);
    const double a = poly.value(t);
    if (!(a > 0.0)) {
      std::ostringstream msg;
      msg << "scaling factor " << a << " at t = " << t << " is not positive";
      fail(ErrorKind::design_infeasible, msg.str());
    }
    const double lam = (std::pow(a, -3) - poly.acceleration(t)) / (std::pow(a, 2 * poly.q - 1) * d);
    r.times[k] = t;
    r.lambda[k] = lam;
    if (lam <= 0.0) r.has_nonpositive = true;
  }
  return r;
}

StaRamp design_ramp(int n, int q, double lambda_i, double lambda_f, double t_f, int samples) {
  return ramp_from_scaling(design_scaling(n, q, lambda_i, lambda_f, t_f), samples);
}

double ermakov_residual(const ScalingPolynomial& poly, const StaRamp& ramp) {
  require(poly.n == ramp.n && poly.q == ramp.q && poly.t_f == ramp.t_f, ErrorKind::invalid_argument,
          "polynomial and ramp were designed for different parameters");
  const double d = general_coefficients(poly.n, poly.q).d;
  double worst = 0.0;
  for (std::size_t k = 0; k < ramp.times.size(); ++k) {
    const double t = ramp.times[k];
    const double a = poly.value(t);
    const double r = poly.acceleration(t) + ramp.lambda[k] * std::pow(a, 2 * poly.q - 1) * d - std::pow(a, -3);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

// ---------------------------------------------------------------- ansatz dynamics

VariationalRates variational_ode_rhs(const VariationalState& s, double lambda, int n, int q, double x0) {
  check_indices(n, q);
  require(s.a > 0.0, ErrorKind::invalid_state, "scaling factor must be positive");
  const GeneralCoefficients g = general_coefficients(n, q);
  const double d = s.xi - x0;
  double width_force = 0.0;   // sum_k k T_k
  double centre_force = 0.0;  // d/dxi of <(x - x0)^(2q)>
  for (int k = 0; k <= q; ++k) {
    const double c = binomial(2 * q, 2 * k);
    const double ak = std::pow(s.a, 2 * k) * g.moments[k];
    width_force += k * c * std::pow(d, 2 * q - 2 * k) * ak;
    if (k < q) centre_force += c * (2 * q - 2 * k) * std::pow(d, 2 * q - 2 * k - 1) * ak;
  }
  VariationalRates r;
  r.a_dot = 2.0 * s.a * s.b;
  r.b_dot = 1.0 / (2.0 * std::pow(s.a, 4)) - 2.0 * s.b * s.b - lambda * width_force / ((2.0 * n + 1.0) * s.a * s.a);
  r.c_dot = -0.5 * lambda * centre_force;
  r.xi_dot = s.c;
  return r;
}

namespace {

VariationalState advance(const VariationalState& s, const VariationalRates& r, double h) {
  return {s.a + h * r.a_dot, s.b + h * r.b_dot, s.c + h * r.c_dot, s.xi + h * r.xi_dot};
}

}  // namespace

std::vector<VariationalState> integrate_ansatz(const VariationalState& start, const RampSchedule& ramp, int n, int q,
                                               double x0, int steps) {
  require(steps >= 1, ErrorKind::invalid_argument, "need at least one integration step");
  const double h = ramp.duration() / steps;
  std::vector<VariationalState> out;
  out.reserve(steps + 1);
  out.push_back(start);
  VariationalState s = start;
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const double lm = ramp(t + 0.5 * h);
    const VariationalRates k1 = variational_ode_rhs(s, ramp(t), n, q, x0);
    const VariationalRates k2 = variational_ode_rhs(advance(s, k1, 0.5 * h), lm, n, q, x0);
    const VariationalRates k3 = variational_ode_rhs(advance(s, k2, 0.5 * h), lm, n, q, x0);
    const VariationalRates k4 = variational_ode_rhs(advance(s, k3, h), ramp(std::min(t + h, ramp.duration())), n, q, x0);
    s.a += h / 6.0 * (k1.a_dot + 2 * k2.a_dot + 2 * k3.a_dot + k4.a_dot);
    s.b += h / 6.0 * (k1.b_dot + 2 * k2.b_dot + 2 * k3.b_dot + k4.b_dot);
    s.c += h / 6.0 * (k1.c_dot + 2 * k2.c_dot + 2 * k3.c_dot + k4.c_dot);
    s.xi += h / 6.0 * (k1.xi_dot + 2 * k2.xi_dot + 2 * k3.xi_dot + k4.xi_dot);
    out.push_back(s);
  }
  return out;
}

double ansatz_energy(int n, double lambda, int q) {
  check_indices(n, q);
  require(lambda > 0.0, ErrorKind::invalid_argument, "trap strength must be positive");
  const double a = scaling_fixed_point(n, q, lambda);
  return (2.0 * n + 1.0) / (4.0 * a * a) + 0.5 * lambda * std::pow(a, 2 * q) * hermite_even_moment(n, q);
}

// ---------------------------------------------------------------- CSV

void write_ramp_csv(std::ostream& out, const StaRamp& ramp, const std::string& comment) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(12);
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "# n=" << ramp.n << ",q=" << ramp.q << ",lambda_i=" << ramp.lambda_i << ",lambda_f=" << ramp.lambda_f
      << ",t_f=" << ramp.t_f << '\n';
  out << "t,lambda\n";
  for (std::size_t k = 0; k < ramp.times.size(); ++k) out << ramp.times[k] << ',' << ramp.lambda[k] << '\n';
  out.flags(flags);
  out.precision(prec);
}

StaRamp read_ramp_csv(std::istream& in) {
  StaRamp r;
  std::string line;
  int line_no = 0;
  bool header = false;
  bool meta = false;
  auto bad = [&](const std::string& what) {
    std::ostringstream msg;
    msg << "ramp CSV line " << line_no << ": " << what;
    fail(ErrorKind::config, msg.str());
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# n=", 0) != 0) continue;
      std::istringstream fields(line.substr(1));
      std::string item;
      while (std::getline(fields, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) bad("malformed metadata '" + item + "'");
        std::string key = item.substr(0, eq);
        key.erase(0, key.find_first_not_of(' '));
        if (key != "n" && key != "q" && key != "lambda_i" && key != "lambda_f" && key != "t_f")
          bad("unknown metadata key '" + key + "'");
        double v = 0.0;
        try {
          v = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
          bad("unreadable value for '" + key + "'");
        }
        if (key == "n") r.n = static_cast<int>(v);
        else if (key == "q") r.q = static_cast<int>(v);
        else if (key == "lambda_i") r.lambda_i = v;
        else if (key == "lambda_f") r.lambda_f = v;
        else r.t_f = v;
      }
      meta = true;
      continue;
    }
    if (!header) {
      if (line != "t,lambda") bad("expected header 't,lambda'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) bad("expected two columns");
    try {
      r.times.push_back(std::stod(line.substr(0, comma)));
      r.lambda.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      bad("unreadable number");
    }
    if (r.lambda.back() <= 0.0) r.has_nonpositive = true;
  }
  if (!meta || !header) bad("missing metadata or header");
  if (r.times.size() < 4) bad("fewer than 4 samples");
  if (r.t_f == 0.0) r.t_f = r.times.back();
  return r;
}

}  // namespace tgqsl
