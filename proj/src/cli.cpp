#include "dmsym/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "dmsym/basis.hpp"

namespace dmsym {

namespace {

using nlohmann::json;

constexpr double kBallTol = 1e-9;
constexpr long kMaxSteps = 10'000'000;

using Cell = std::variant<std::monostate, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string render(OutputFormat format) const {
    if (format == OutputFormat::Json) {
      json out = json::array();
      for (const auto& row : rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < columns.size(); ++c) {
          std::visit(
              [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::monostate>) {
                  obj[columns[c]] = nullptr;
                } else {
                  obj[columns[c]] = v;
                }
              },
              row[c]);
        }
        out.push_back(std::move(obj));
      }
      return out.dump(2) + "\n";
    }
    std::string text;
    for (std::size_t c = 0; c < columns.size(); ++c) text += (c ? "," : "") + columns[c];
    text += "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) text += ',';
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) {
                text += format_double(v);
              } else if constexpr (std::is_same_v<T, std::string>) {
                text += v;
              } else if constexpr (std::is_same_v<T, bool>) {
                text += v ? "1" : "0";
              }
            },
            row[c]);
      }
      text += "\n";
    }
    return text;
  }
};

const char* picture_name(Picture p) { return p == Picture::Interaction ? "interaction" : "schrodinger"; }

std::vector<Picture> expand(Picture p) {
  if (p == Picture::Both) return {Picture::Schrodinger, Picture::Interaction};
  return {p};
}

long step_count(const RunConfig& cfg) {
  const double steps = std::floor(cfg.t_max / cfg.dt + 1e-9);
  if (steps > static_cast<double>(kMaxSteps)) throw UsageError("t-max / dt exceeds the step limit");
  return static_cast<long>(steps);
}

const BlochVector& pick(const EvolutionPoint& pt, Picture p) {
  return p == Picture::Interaction ? pt.interaction : pt.schrodinger;
}

GeneratorId require_transform(const RunConfig& cfg) {
  if (!cfg.transform) throw UsageError("--transform is required");
  return *cfg.transform;
}

void require_qubit(const RunConfig& cfg, const char* what) {
  if (cfg.n != 2) throw UsageError(std::string(what) + " is defined for --n 2 only");
}

json vec_json(const Eigen::Vector3d& v) { return json::array({v(0), v(1), v(2)}); }

Superoperator channel_generator(const RunConfig& cfg) {
  if (cfg.channel == Channel::PhaseDamping) return phase_damping(cfg.params.gamma);
  return amplitude_damping(cfg.params);
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void RunConfig::validate() const {
  if (n < 2 || n > kMaxDim) throw UsageError("--n must be between 2 and " + std::to_string(kMaxDim));
  if (!(dt > 0.0) || !std::isfinite(dt)) throw UsageError("--dt must be > 0");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw UsageError("--t-max must be >= 0");
  if (!std::isfinite(initial.norm_squared()) || !initial.in_ball()) {
    throw UsageError("initial Bloch vector lies outside the unit ball");
  }
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string cmd_traj(const RunConfig& cfg) {
  cfg.validate();
  const DampingParams& p = cfg.params;
  Table table{{"t", "x", "y", "z", "picture", "param", "valid"}, {}};
  Superoperator k;
  Superoperator kd;
  if (cfg.oracle) {
    for (const char* c : {"oracle_x", "oracle_y", "oracle_z", "deviation"}) table.columns.emplace_back(c);
    k = amplitude_damping(p);
    kd = amplitude_damping_dissipator(p.gamma, p.b);
  }
  const ComplexMatrix rho0 = bloch_to_rho(cfg.initial);
  const long steps = step_count(cfg);
  for (long s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) * cfg.dt;
    const EvolutionPoint pt = evolve_closed_form(p, cfg.initial, t);
    for (const Picture pic : expand(cfg.picture)) {
      const BlochVector& r = pick(pt, pic);
      std::vector<Cell> row{t, r.x, r.y, r.z, std::string(picture_name(pic)), std::monostate{}, r.in_ball(kBallTol)};
      if (cfg.oracle) {
        const BlochVector o =
            rho_to_bloch(evolve_oracle(pic == Picture::Interaction ? kd : k, rho0, t));
        row.insert(row.end(), {o.x, o.y, o.z, max_abs_difference(o, r)});
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table.render(cfg.format);
}

std::string cmd_family_sweep(const RunConfig& cfg) {
  cfg.validate();
  require_qubit(cfg, "sweep");
  const GeneratorId id = require_transform(cfg);
  const std::vector<double> grid = cfg.grid.empty() ? std::vector<double>{cfg.param} : cfg.grid;
  const DampingParams& p = cfg.params;
  const long steps = step_count(cfg);

  Table table{{"t", "x", "y", "z", "picture", "param", "valid"}, {}};
  for (const Picture pic : expand(cfg.picture)) {
    // In the interaction frame the reference generator is the dissipator
    // alone, i.e. K_amp with omega0 = 0.
    DampingParams tmpl = p;
    if (pic == Picture::Interaction) tmpl.omega0 = 0.0;
    const Superoperator base = amplitude_damping_generator(tmpl.omega0, p.gamma, p.b);
    for (const double q : grid) {
      const SymmetryVerdict verdict = classify_symmetry(base, closed_form_transform(id, q), tmpl);
      std::optional<DampingParams> moved;
      if (verdict.kind == SymmetryKind::FormInvariant) {
        moved = *verdict.params;
        moved->omega0 = p.omega0;
      }
      const BlochVector start = bloch_action(id, q, cfg.initial);
      for (long s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) * cfg.dt;
        BlochVector r;
        if (moved) {
          r = pick(evolve_closed_form(*moved, start, t), pic);
        } else {
          r = bloch_action(id, q, pick(evolve_closed_form(p, cfg.initial, t), pic));
        }
        table.rows.push_back({t, r.x, r.y, r.z, std::string(picture_name(pic)), q, r.in_ball(kBallTol)});
      }
    }
  }
  return table.render(cfg.format);
}

VerifyOutcome cmd_verify(const VerifyOptions& options) {
  const VerifyReport report = run_verification(options);
  json suites = json::array();
  for (const auto& c : report.checks) {
    suites.push_back({{"suite", c.suite},
                      {"check", c.check},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  const json out = {{"level", to_string(report.level)},
                    {"seed", options.seed},
                    {"passed", report.passed()},
                    {"failed_suites", report.failed_suites()},
                    {"checks", suites}};
  return {out.dump(2) + "\n", report.passed(), report.failed_suites()};
}

std::string cmd_cp(const RunConfig& cfg) {
  const GeneratorId id = require_transform(cfg);
  json out = {{"transform", id.label()}, {"param", cfg.param}, {"n", cfg.n}};
  Superoperator s;
  if (cfg.n == 2) {
    s = closed_form_transform(id, cfg.param);
    const AffineMap m = affine_of(s);
    out["fa"] = to_string(fujiwara_algoet_cp(m));
    out["kappa"] = vec_json(m.kappa);
    out["eta"] = vec_json(m.eta);
    out["det"] = m.a.determinant();
  } else {
    s = expm(generator(id), -cfg.param);
    out["fa"] = to_string(CpVerdict::NotApplicable);
  }
  const ChoiResult choi = choi_cp(s);
  out["choi"] = to_string(choi.verdict);
  out["choi_min_eigenvalue"] = choi.min_eigenvalue;
  return out.dump(2) + "\n";
}

std::string cmd_symmetry(const RunConfig& cfg) {
  require_qubit(cfg, "symmetry");
  const GeneratorId id = require_transform(cfg);
  DampingParams tmpl = cfg.params;
  Superoperator k;
  if (cfg.channel == Channel::PhaseDamping) {
    k = phase_damping(tmpl.gamma);
  } else {
    tmpl.validate();
    if (cfg.picture == Picture::Interaction) tmpl.omega0 = 0.0;
    k = amplitude_damping_generator(tmpl.omega0, tmpl.gamma, tmpl.b);
  }
  const SymmetryVerdict v = classify_symmetry(k, closed_form_transform(id, cfg.param), tmpl);
  json out = {{"channel", cfg.channel == Channel::PhaseDamping ? "ph" : "amp"},
              {"transform", id.label()},
              {"param", cfg.param},
              {"kind", to_string(v.kind)},
              {"residual", v.residual}};
  if (v.params) {
    out["b_prime"] = v.params->b;
    out["gamma_prime"] = v.params->gamma;
  }
  if (!v.diagnostic.empty()) out["diagnostic"] = v.diagnostic;
  return out.dump(2) + "\n";
}

std::string cmd_extract(const std::string& matrix_json) {
  const Superoperator k = read_matrix_json(matrix_json);
  const CoefficientVector c = extract_coefficients(k);
  json coeffs = json::object();
  for (std::size_t i = 0; i < c.values().size(); ++i) coeffs[c.name_at(i)] = c.values()[i];
  const json out = {{"n", c.n()},
                    {"convention", c.convention() == CoefficientConvention::Dilation ? "dilation" : "lambda"},
                    {"coefficients", coeffs}};
  return out.dump(2) + "\n";
}

std::string cmd_tensors(int n) {
  const BasisSet basis(n);
  const StructureTensors t(basis);
  json f = json::array();
  json d = json::array();
  const int m = t.size();
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (int k = j; k < m; ++k) {
        if (i < j && j < k && std::abs(t.f(i, j, k)) > 1e-14) {
          f.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"value", t.f(i, j, k)}});
        }
        if (std::abs(t.d(i, j, k)) > 1e-14) {
          d.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"value", t.d(i, j, k)}});
        }
      }
  const json out = {{"n", n}, {"f", f}, {"d", d}};
  return out.dump(2) + "\n";
}

std::string cmd_channel(const RunConfig& cfg) {
  if (cfg.channel == Channel::AmplitudeDamping) cfg.validate();
  return write_matrix_json(channel_generator(cfg));
}

Superoperator read_matrix_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) throw UsageError("matrix file must be a non-empty array of rows");
  const auto rows = static_cast<int>(doc.size());
  int n = 2;
  while (n * n < rows && n < kMaxDim) ++n;
  if (n * n != rows) throw UsageError("matrix must be N^2 x N^2 for some 2 <= N <= 8");
  ComplexMatrix mat(rows, rows);
  for (int r = 0; r < rows; ++r) {
    const json& row = doc[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != rows) {
      throw UsageError("matrix row " + std::to_string(r) + " has the wrong length");
    }
    for (int c = 0; c < rows; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw UsageError("matrix entry (" + std::to_string(r) + ", " + std::to_string(c) +
                         ") is not a [re, im] pair");
      }
      mat(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  if (!all_finite(mat)) throw UsageError("matrix has non-finite entries");
  return Superoperator(n, std::move(mat));
}

std::string write_matrix_json(const Superoperator& s) {
  json out = json::array();
  for (int r = 0; r < s.mat().rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < s.mat().cols(); ++c) row.push_back({s(r, c).real() + 0.0, s(r, c).imag() + 0.0});
    out.push_back(std::move(row));
  }
  return out.dump() + "\n";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry transformations of qubit and N-level density-matrix dynamics"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::optional<double> b;
  std::optional<double> temperature;
  std::string transform;
  std::string picture;
  std::string format = "csv";
  std::string channel = "amp";
  std::string out_path;
  std::string level = "fast";
  bool full = false;
  std::string matrix_path;

  auto physics = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "system dimension")->capture_default_str();
    sub->add_option("--omega0", cfg.params.omega0, "level splitting omega0")->capture_default_str();
    sub->add_option("--gamma", cfg.params.gamma, "damping rate gamma")->capture_default_str();
    auto* bopt = sub->add_option("--b", b, "b = n + 1/2 (default 0.5)");
    sub->add_option("--temperature", temperature, "bath temperature T, sets b = coth(omega0/2T)/2 (k_B = 1)")
        ->excludes(bopt);
    sub->add_option("--channel", channel, "amp or ph")
        ->check(CLI::IsMember({"amp", "ph"}))
        ->capture_default_str();
  };
  auto trajectory = [&](CLI::App* sub) {
    sub->add_option("--x0", cfg.initial.x)->capture_default_str();
    sub->add_option("--y0", cfg.initial.y)->capture_default_str();
    sub->add_option("--z0", cfg.initial.z)->capture_default_str();
    sub->add_option("--t-max", cfg.t_max)->capture_default_str();
    sub->add_option("--dt", cfg.dt)->capture_default_str();
    sub->add_option("--picture", picture, "schrodinger, interaction or both")
        ->check(CLI::IsMember({"schrodinger", "interaction", "both"}));
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };
  auto transformation = [&](CLI::App* sub) {
    sub->add_option("--transform", transform, "generator label, e.g. R3, D3, H12, P12");
    sub->add_option("--param", cfg.param, "transformation parameter")->capture_default_str();
  };
  auto output = [&](CLI::App* sub) { sub->add_option("--out", out_path, "write to this file instead of stdout"); };

  auto* traj = app.add_subcommand("traj", "closed-form amplitude-damping trajectory");
  physics(traj);
  trajectory(traj);
  traj->add_flag("--oracle", cfg.oracle, "add matrix-exponential oracle columns");
  output(traj);

  auto* sweep = app.add_subcommand("sweep", "family of trajectories generated by a transformation");
  physics(sweep);
  trajectory(sweep);
  transformation(sweep);
  sweep->add_option("--grid", cfg.grid, "comma-separated parameter values")->delimiter(',');
  output(sweep);

  auto* verify = app.add_subcommand("verify", "run the self-check suites");
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();
  verify->add_flag("--full", full, "same as --level full");
  verify->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
  output(verify);

  auto* cp = app.add_subcommand("cp", "complete-positivity verdicts for exp(-param G)");
  cp->add_option("--n", cfg.n)->capture_default_str();
  transformation(cp);
  output(cp);

  auto* symmetry = app.add_subcommand("symmetry", "symmetry verdict of exp(-param G) for a damping channel");
  physics(symmetry);
  transformation(symmetry);
  symmetry->add_option("--picture", picture, "schrodinger or interaction")
      ->check(CLI::IsMember({"schrodinger", "interaction"}));
  output(symmetry);

  auto* extract = app.add_subcommand("extract", "coefficient vector of a generator matrix file");
  extract->add_option("matrix", matrix_path, "JSON matrix file of [re, im] pairs")->required();
  output(extract);

  auto* tensors = app.add_subcommand("tensors", "dump the f and d structure tensors");
  tensors->add_option("--n", cfg.n)->capture_default_str();
  output(tensors);

  auto* chan = app.add_subcommand("channel", "write a damping generator as a matrix file");
  physics(chan);
  output(chan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (temperature) {
      cfg.params = DampingParams::from_temperature(cfg.params.omega0, cfg.params.gamma, *temperature);
    } else if (b) {
      cfg.params.b = *b;
    }
    cfg.channel = channel == "ph" ? Channel::PhaseDamping : Channel::AmplitudeDamping;
    cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (!transform.empty()) cfg.transform = parse_generator_id(transform, cfg.n);
    if (picture == "schrodinger") cfg.picture = Picture::Schrodinger;
    if (picture == "interaction") cfg.picture = Picture::Interaction;
    if (picture == "both") cfg.picture = Picture::Both;
    if (cfg.n < 2 || cfg.n > kMaxDim) throw UsageError("--n must be between 2 and " + std::to_string(kMaxDim));

    std::string text;
    int code = 0;
    if (*traj) {
      text = cmd_traj(cfg);
    } else if (*sweep) {
      if (picture.empty()) cfg.picture = Picture::Schrodinger;
      text = cmd_family_sweep(cfg);
    } else if (*verify) {
      VerifyOptions opt;
      opt.level = (full || level == "full") ? VerifyLevel::Full : VerifyLevel::Fast;
      opt.seed = cfg.seed;
      const VerifyOutcome outcome = cmd_verify(opt);
      text = outcome.json;
      if (!outcome.passed) {
        err << "verification failed:";
        for (const auto& suite : outcome.failed_suites) err << ' ' << suite;
        err << "\n";
        code = 2;
      }
    } else if (*cp) {
      text = cmd_cp(cfg);
    } else if (*symmetry) {
      text = cmd_symmetry(cfg);
    } else if (*extract) {
      std::ifstream in(matrix_path);
      if (!in) throw UsageError("cannot open " + matrix_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      text = cmd_extract(buf.str());
    } else if (*tensors) {
      text = cmd_tensors(cfg.n);
    } else if (*chan) {
      text = cmd_channel(cfg);
    }

    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw UsageError("cannot write " + out_path);
      file << text;
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dmsym
