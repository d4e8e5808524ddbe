#include "cli.hpp"

#include "photon_slh/photon_slh.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace photon_slh::cli {

namespace {

using nlohmann::json;

constexpr const char* kToleranceEnv = "PHOTON_SLH_TOL";

// Raised for malformed command-line values; maps to kIoError.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(const ConditionReport& c) {
  json j;
  j["name"] = c.name;
  j["holds"] = c.holds;
  j["residual"] = c.residual;
  j["value"] = c.value ? to_json(*c.value) : json(nullptr);
  if (!c.message.empty()) j["message"] = c.message;
  return j;
}

json to_json(const ValidationReport& r) {
  json j;
  j["passed"] = r.passed;
  json conditions = json::array();
  for (const auto* c : r.conditions()) conditions.push_back(to_json(*c));
  j["conditions"] = std::move(conditions);
  if (!r.passed) j["failed"] = r.first_failure();
  if (r.params) {
    j["params"] = {{"alpha", to_json(r.params->alpha)},
                   {"beta", to_json(r.params->beta)},
                   {"h", r.params->h},
                   {"a", to_json(r.params->a)}};
  } else {
    j["params"] = nullptr;
  }
  return j;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid number for " + what + ": '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double tolerance(const std::optional<double>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kToleranceEnv); env && *env) {
    const double v = parse_double(env, kToleranceEnv);
    if (!(v > 0.0)) throw UsageError(std::string(kToleranceEnv) + " must be positive");
    return v;
  }
  return kDefaultTolerance;
}

// "a:b:n"
UniformGrid parse_range(const std::string& desc, const std::string& what) {
  const auto parts = split(desc, ':');
  if (parts.size() != 3) throw UsageError(what + " must look like start:stop:count");
  const double a = parse_double(parts[0], what);
  const double b = parse_double(parts[1], what);
  const double n = parse_double(parts[2], what);
  if (n < 1 || n != std::floor(n)) throw UsageError(what + ": count must be a positive integer");
  try {
    return UniformGrid::linspace(a, b, static_cast<std::size_t>(n));
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  }
}

// "kind:key=value,key=value"
std::map<std::string, double> parse_params(const std::string& body, const std::string& kind) {
  std::map<std::string, double> out;
  if (body.empty()) return out;
  for (const auto& item : split(body, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("pulse " + kind + ": expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = parse_double(item.substr(eq + 1), kind + "." + item.substr(0, eq));
  }
  return out;
}

PulseShape parse_shape(const std::string& desc) {
  const auto colon = desc.find(':');
  const std::string kind = desc.substr(0, colon);
  auto params = parse_params(colon == std::string::npos ? "" : desc.substr(colon + 1), kind);
  auto take = [&](const char* key, double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    const double v = it->second;
    params.erase(it);
    return v;
  };
  PulseShape shape;
  if (kind == "gaussian") {
    shape = GaussianShape{take("center", 0.0), take("width", 1.0), take("carrier", 0.0)};
  } else if (kind == "decaying_exp") {
    shape = DecayingExpShape{take("kappa", 1.0), take("t_on", 0.0)};
  } else if (kind == "rising_exp") {
    shape = RisingExpShape{take("kappa", 1.0), take("omega_c", 0.0)};
  } else if (kind == "square") {
    shape = SquareShape{take("t0", -0.5), take("t1", 0.5)};
  } else {
    throw UsageError("unknown pulse kind '" + kind +
                     "' (gaussian, decaying_exp, rising_exp, square, csv:PATH)");
  }
  if (!params.empty()) {
    throw UsageError("pulse " + kind + ": unknown parameter '" + params.begin()->first + "'");
  }
  return shape;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw ParseError("failed writing " + path);
}

// Writes `text` to `path`, or to `fallback` when no path was given.
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
  } else {
    write_file(path, text);
  }
}

std::string sidecar_path(const std::string& explicit_path, const std::string& out_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (!out_path.empty()) return out_path + ".json";
  return {};
}

PhotonTransfer build_filter(const SLHModel& model, unsigned copies, double tol) {
  const PhotonTransfer single = from_model(model, tol);
  PhotonTransfer filter = single;
  for (unsigned k = 1; k < copies; ++k) filter = cascade(filter, single);
  return filter;
}

// Lifts a model onto left (x) right: `site` 0 acts on the left factor.
SLHModel lift(const SLHModel& m, Index other_dim, bool left) {
  auto up = [&](const Operator& op) {
    const Operator id = Operator::identity(other_dim);
    return left ? kron(op, id) : kron(id, op);
  };
  if (m.factorized()) {
    return SLHModel(m.scattering(), m.theta(), up(m.coupling_operator()), up(m.hamiltonian()));
  }
  std::vector<Operator> ls;
  for (const auto& l : m.couplings()) ls.push_back(up(l));
  return SLHModel::general(m.scattering(), std::move(ls), up(m.hamiltonian()));
}

// ---------------------------------------------------------------- validate

struct ValidateOptions {
  std::string model;
  std::optional<double> tol;
};

int cmd_validate(const ValidateOptions& o, std::ostream& out, std::ostream& err) {
  const SLHModel model = io::load_model(o.model);
  if (!model.factorized()) {
    err << "model coupling is not of the form theta^T L0; conditions cannot be checked\n";
    return kConditionFailure;
  }
  const ValidationReport report = validate_linear_response(model, tolerance(o.tol));
  out << to_json(report).dump(2) << '\n';
  return report.passed ? kOk : kConditionFailure;
}

// ---------------------------------------------------------------- shape

struct ShapeOptions {
  std::string model;
  unsigned cascade = 1;
  std::string pulse = "gaussian";
  std::string weights;
  std::optional<double> t_start;
  std::optional<double> dt;
  std::optional<double> span;
  unsigned log2n = 14;
  std::string method = "fft";
  std::string out;
  std::string sidecar;
  double t0 = 0.0;
  std::optional<double> tol;
};

int cmd_shape(const ShapeOptions& o, std::ostream& out, std::ostream& err) {
  const SLHModel model = io::load_model(o.model);
  const PhotonTransfer filter = build_filter(model, o.cascade, tolerance(o.tol));
  const Index k = filter.channels();

  Pulse input = [&] {
    if (o.pulse.rfind("csv:", 0) == 0) {
      std::ifstream f(o.pulse.substr(4), std::ios::binary);
      if (!f) throw ParseError("cannot open pulse file " + o.pulse.substr(4));
      return io::read_pulse_csv(f);
    }
    const PulseShape shape = parse_shape(o.pulse);
    Vector weights = Vector::Zero(k);
    if (o.weights.empty()) {
      weights(0) = 1.0;
    } else {
      const auto parts = split(o.weights, ',');
      if (static_cast<Index>(parts.size()) != k) {
        throw UsageError("--weights needs one entry per channel (" + std::to_string(k) + ")");
      }
      for (Index i = 0; i < k; ++i) weights(i) = parse_double(parts[static_cast<std::size_t>(i)], "--weights");
    }
    const std::size_t n = std::size_t{1} << o.log2n;
    double dt;
    if (o.dt) {
      dt = *o.dt;
    } else if (o.span) {
      dt = *o.span / static_cast<double>(n);
    } else {
      double slowest = 0.0;
      for (const auto& s : filter.stages()) slowest = std::max(slowest, 1.0 / -s.a.real());
      const double span = std::max({2.0 * required_span(filter), 20.0 * slowest, 1.0});
      dt = span / static_cast<double>(n);
    }
    const double t_start = o.t_start.value_or(-0.5 * static_cast<double>(n - 1) * dt);
    return Pulse::analytic(shape, TimeGrid(t_start, dt, n), weights);
  }();

  json side;
  side["method"] = o.method;
  side["stages"] = filter.stages().size();
  side["grid"] = {{"t_start", input.grid().t_start},
                  {"dt", input.grid().dt},
                  {"n", input.grid().size}};

  std::optional<ShapeResult> result;
  if (o.method == "fft" || o.method == "both") {
    result = shape_fft(input, filter);
  }
  if (o.method == "ode" || o.method == "both") {
    ShapeResult ode = shape_ode(input, filter);
    if (result) {
      side["discrepancy_l2"] = l2_distance(result->output, ode.output);
      side["ode_output_norm"] = ode.output_norm;
    } else {
      result = std::move(ode);
    }
  }
  side["input_norm"] = result->input_norm;
  side["output_norm"] = result->output_norm;
  side["t0"] = o.t0;
  side["pre_t0_energy_fraction"] = result->output.energy_before(o.t0);

  std::ostringstream csv;
  io::write_pulse_csv(csv, result->output);
  emit(o.out, csv.str(), out);
  const std::string side_text = side.dump(2) + "\n";
  const std::string side_path = sidecar_path(o.sidecar, o.out);
  if (side_path.empty()) {
    err << side_text;
  } else {
    write_file(side_path, side_text);
    if (!o.out.empty()) out << side_text;
  }
  return kOk;
}

// ---------------------------------------------------------------- compose

struct ComposeOptions {
  std::vector<std::string> series;
  std::string feedback;
  bool tensor = false;
  std::string out;
  std::string sidecar;
};

int cmd_compose(const ComposeOptions& o, std::ostream& out, std::ostream& err) {
  if (o.series.empty() == o.feedback.empty()) {
    throw UsageError("compose: give exactly one of --series FIRST SECOND or --feedback MODEL");
  }
  if (!o.series.empty()) {
    if (o.series.size() != 2) throw UsageError("--series takes two model files");
    SLHModel first = io::load_model(o.series[0]);
    SLHModel second = io::load_model(o.series[1]);
    if (o.tensor) {
      const Index n1 = first.levels();
      const Index n2 = second.levels();
      first = lift(first, n2, true);
      second = lift(second, n1, false);
    }
    emit(o.out, io::dump_model(series_product(second, first)) + "\n", out);
    return kOk;
  }

  const SLHModel model = io::load_model(o.feedback);
  const FeedbackReduction r = feedback_reduction(model);
  emit(o.out, io::dump_model(r.model) + "\n", out);
  json side;
  side["delta"] = r.detuning;
  side["theta"] = to_json(r.theta);
  side["loop_gain"] = to_json(r.loop_gain);
  side["S"] = to_json(r.model.scattering()(0, 0));
  const std::string side_text = side.dump(2) + "\n";
  const std::string side_path = sidecar_path(o.sidecar, o.out);
  if (side_path.empty()) {
    err << side_text;
  } else {
    write_file(side_path, side_text);
    out << side_text;
  }
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
  std::string model;
  std::string omega;
  unsigned cascade = 1;
  std::string out;
  std::optional<double> tol;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream&) {
  const SLHModel model = io::load_model(o.model);
  const UniformGrid omegas = parse_range(o.omega, "--omega");
  const PhotonTransfer filter = build_filter(model, o.cascade, tolerance(o.tol));
  const FrequencyResponse fr = frequency_response(filter, omegas);
  std::ostringstream csv;
  csv << "omega,i,j,re,im,abs2\n";
  for (std::size_t m = 0; m < omegas.size; ++m) {
    const std::string w = io::format_double(omegas[m]);
    const Matrix& g = fr.values[m];
    for (Index i = 0; i < g.rows(); ++i) {
      for (Index j = 0; j < g.cols(); ++j) {
        csv << w << ',' << (i + 1) << ',' << (j + 1) << ',' << io::format_double(g(i, j).real())
            << ',' << io::format_double(g(i, j).imag()) << ','
            << io::format_double(std::norm(g(i, j))) << '\n';
      }
    }
  }
  emit(o.out, csv.str(), out);
  return kOk;
}

// ---------------------------------------------------------------- oracle

struct OracleOptions {
  std::string which;
  double kappa = 1.0;
  double kappa2 = 1.0;
  double omega_c = 0.0;
  unsigned atoms = 1;
  std::string omega = "-10:10:201";
  std::string t = "0:10:101";
  std::string scattering = "swap";
  unsigned log2n = 12;
  std::optional<double> span;
  std::string out;
};

Matrix parse_scattering(const std::string& desc) {
  Matrix s(2, 2);
  if (desc == "swap") {
    s << 0.0, 1.0, 1.0, 0.0;
  } else if (desc == "beamsplitter") {
    const double r = 1.0 / std::sqrt(2.0);
    s << Complex(r, 0.0), Complex(0.0, r), Complex(0.0, r), Complex(r, 0.0);
  } else {
    // "s11re,s11im,s12re,s12im,s21re,s21im,s22re,s22im"
    const auto parts = split(desc, ',');
    if (parts.size() != 8) {
      throw UsageError("--scattering: use swap, beamsplitter or 8 comma-separated numbers");
    }
    for (int i = 0; i < 4; ++i) {
      s(i / 2, i % 2) = Complex(parse_double(parts[static_cast<std::size_t>(2 * i)], "--scattering"),
                                parse_double(parts[static_cast<std::size_t>(2 * i + 1)], "--scattering"));
    }
  }
  return s;
}

int cmd_oracle(const OracleOptions& o, std::ostream& out, std::ostream&) {
  std::ostringstream csv;
  auto row = [&](double x, const std::string& tag, Complex v) {
    csv << io::format_double(x) << ',' << tag << ',' << io::format_double(v.real()) << ','
        << io::format_double(v.imag()) << ',' << io::format_double(std::norm(v)) << '\n';
  };
  if (o.which == "inverting-pulse") {
    const TwoLevelParams p(o.kappa, o.omega_c);
    const double span = o.span.value_or(40.0 / o.kappa);
    io::write_pulse_csv(csv, inverting_pulse(p, TimeGrid::centered(span, o.log2n)));
  } else if (o.which == "memory-kernel") {
    const TwoLevelParams p(o.kappa, o.omega_c);
    const UniformGrid ts = parse_range(o.t, "--t");
    csv << "t,atoms,re,im,abs2\n";
    for (std::size_t i = 0; i < ts.size; ++i) {
      row(ts[i], std::to_string(o.atoms), memory_kernel_1f1(o.atoms, p, ts[i]));
    }
  } else {
    const UniformGrid ws = parse_range(o.omega, "--omega");
    csv << "omega,tag,re,im,abs2\n";
    for (std::size_t i = 0; i < ws.size; ++i) {
      const double w = ws[i];
      if (o.which == "two-level") {
        row(w, "G", two_level_G(TwoLevelParams(o.kappa, o.omega_c), w));
      } else if (o.which == "memory") {
        row(w, "G^" + std::to_string(o.atoms),
            memory_GN(o.atoms, TwoLevelParams(o.kappa, o.omega_c), w));
      } else if (o.which == "two-channel") {
        const auto [g1, g2] = two_channel_G(o.kappa, o.kappa2, o.omega_c, w);
        row(w, "G1", g1);
        row(w, "G2", g2);
      } else if (o.which == "feedback") {
        const Matrix s = parse_scattering(o.scattering);
        const bool real = s.imag().cwiseAbs().maxCoeff() == 0.0;
        row(w, "G",
            feedback_G(real ? FeedbackCase::real_scattering : FeedbackCase::complex_scattering, s,
                       o.kappa, o.kappa2, o.omega_c, w));
      } else {
        throw UsageError("unknown oracle '" + o.which +
                         "' (two-level, two-channel, memory, memory-kernel, feedback, "
                         "inverting-pulse)");
      }
    }
  }
  emit(o.out, csv.str(), out);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-photon response of finite-level quantum systems (S, L, H0)"};
  app.require_subcommand(1);

  ValidateOptions vo;
  auto* validate = app.add_subcommand("validate", "Check the single-photon linearity conditions");
  validate->add_option("model", vo.model, "Model JSON file")->required();
  validate->add_option("--tol", vo.tol, "Residual tolerance (default $PHOTON_SLH_TOL or 1e-10)");

  ShapeOptions so;
  auto* shape = app.add_subcommand("shape", "Compute the output pulse for a single-photon input");
  shape->add_option("model", so.model, "Model JSON file")->required();
  shape->add_option("--cascade", so.cascade, "Number of copies of the model in series")
      ->check(CLI::Range(1u, 64u));
  shape->add_option("--pulse", so.pulse,
                    "kind[:key=value,...] with kind in gaussian(center,width,carrier), "
                    "decaying_exp(kappa,t_on), rising_exp(kappa,omega_c), square(t0,t1); "
                    "or csv:PATH");
  shape->add_option("--weights", so.weights, "Per-channel amplitudes, comma separated");
  shape->add_option("--t-start", so.t_start, "First sample time (default: centered grid)");
  auto* dt_opt = shape->add_option("--dt", so.dt, "Sample spacing")->check(CLI::PositiveNumber);
  shape->add_option("--span", so.span, "Window length (alternative to --dt)")
      ->check(CLI::PositiveNumber)
      ->excludes(dt_opt);
  shape->add_option("--log2n", so.log2n, "log2 of the sample count")->check(CLI::Range(8u, 22u));
  shape->add_option("--method", so.method, "fft, ode or both")
      ->check(CLI::IsMember({"fft", "ode", "both"}));
  shape->add_option("--out", so.out, "Output pulse CSV (default stdout)");
  shape->add_option("--sidecar", so.sidecar, "Summary JSON path (default OUT.json)");
  shape->add_option("--t0", so.t0, "Reference time for the early-energy fraction");
  shape->add_option("--tol", so.tol, "Residual tolerance for model validation");

  ComposeOptions co;
  auto* compose = app.add_subcommand("compose", "Series product or coherent-feedback reduction");
  compose->add_option("--series", co.series, "FIRST SECOND: the photon meets FIRST first")
      ->expected(2);
  compose->add_option("--feedback", co.feedback,
                      "Two-channel model; output 2 is fed back into input 2");
  compose->add_flag("--tensor", co.tensor,
                    "Place the two series models on independent tensor factors");
  compose->add_option("--out", co.out, "Composed model JSON (default stdout)");
  compose->add_option("--sidecar", co.sidecar, "Feedback summary JSON (default OUT.json)");

  SweepOptions wo;
  auto* sweep = app.add_subcommand("sweep", "Tabulate G(i omega)");
  sweep->add_option("model", wo.model, "Model JSON file")->required();
  sweep->add_option("--omega", wo.omega, "start:stop:count")->required();
  sweep->add_option("--cascade", wo.cascade, "Number of copies in series")
      ->check(CLI::Range(1u, 64u));
  sweep->add_option("--out", wo.out, "Spectrum CSV (default stdout)");
  sweep->add_option("--tol", wo.tol, "Residual tolerance for model validation");

  OracleOptions oo;
  auto* oracle = app.add_subcommand("oracle", "Evaluate closed-form reference formulas");
  oracle->add_option("which", oo.which,
                     "two-level | two-channel | memory | memory-kernel | feedback | "
                     "inverting-pulse")
      ->required();
  oracle->add_option("--kappa,--kappa1", oo.kappa, "Decay rate (channel 1)");
  oracle->add_option("--kappa2", oo.kappa2, "Decay rate of channel 2");
  oracle->add_option("--omega-c", oo.omega_c, "Transition frequency");
  oracle->add_option("--atoms", oo.atoms, "Emitters in series")->check(CLI::Range(1u, 64u));
  oracle->add_option("--omega", oo.omega, "start:stop:count");
  oracle->add_option("--t", oo.t, "start:stop:count (memory-kernel)");
  oracle->add_option("--scattering", oo.scattering,
                     "swap | beamsplitter | 8 numbers (re,im of S11,S12,S21,S22)");
  oracle->add_option("--log2n", oo.log2n, "inverting-pulse grid size")->check(CLI::Range(8u, 22u));
  oracle->add_option("--span", oo.span, "inverting-pulse window length");
  oracle->add_option("--out", oo.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kIoError;
  }

  try {
    if (validate->parsed()) return cmd_validate(vo, out, err);
    if (shape->parsed()) return cmd_shape(so, out, err);
    if (compose->parsed()) return cmd_compose(co, out, err);
    if (sweep->parsed()) return cmd_sweep(wo, out, err);
    if (oracle->parsed()) return cmd_oracle(oo, out, err);
  } catch (const ValidationFailed& e) {
    err << e.what() << '\n' << to_json(e.report()).dump(2) << '\n';
    return kConditionFailure;
  } catch (const NotFactorizedError& e) {
    err << e.what() << '\n';
    return kConditionFailure;
  } catch (const GridError& e) {
    err << e.what() << '\n';
    if (e.suggested_span() > 0.0) err << "suggested span: " << e.suggested_span() << '\n';
    return kGridError;
  } catch (const SingularLoopError& e) {
    err << e.what() << '\n';
    return kSingularLoop;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kIoError;
}

}  // namespace photon_slh::cli
