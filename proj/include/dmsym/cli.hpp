#pragma once

// Command-line front end. Every command renders to a string so that the
// same code path serves the executable and the tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dmsym/dynamics.hpp"
#include "dmsym/generators.hpp"
#include "dmsym/maps.hpp"
#include "dmsym/verify.hpp"

namespace dmsym {

/// Invalid configuration or input; maps to exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Picture { Schrodinger, Interaction, Both };
enum class OutputFormat { Csv, Json };
enum class Channel { AmplitudeDamping, PhaseDamping };

struct RunConfig {
  int n = 2;
  DampingParams params;  // defaults reproduce the reference trajectory
  BlochVector initial{0.4, 0.5, 0.5};
  double t_max = 150.0;
  double dt = 0.5;
  std::optional<GeneratorId> transform;
  double param = 0.0;
  std::vector<double> grid;
  Picture picture = Picture::Both;
  OutputFormat format = OutputFormat::Csv;
  Channel channel = Channel::AmplitudeDamping;
  bool oracle = false;
  std::uint64_t seed = 20240917;

  /// Throws UsageError unless dt > 0, t_max >= 0, the initial state is in the
  /// closed ball and the parameters are physical.
  void validate() const;
};

/// Columns t,x,y,z,picture,param,valid (plus oracle_x, oracle_y, oracle_z,
/// deviation with cfg.oracle); one Schrodinger and/or interaction row per
/// time step t = k dt.
std::string cmd_traj(const RunConfig& cfg);

/// Applies cfg.transform at every grid value to the reference solution. Exact
/// symmetries act on the trajectory directly; form-invariant ones re-solve
/// with (b', gamma'). Rows leaving the Bloch ball have valid = 0.
std::string cmd_family_sweep(const RunConfig& cfg);

struct VerifyOutcome {
  std::string json;
  bool passed = false;
  std::vector<std::string> failed_suites;
};
VerifyOutcome cmd_verify(const VerifyOptions& options);

/// Fujiwara-Algoet and Choi verdicts for exp(-param G) as JSON.
std::string cmd_cp(const RunConfig& cfg);
/// Symmetry verdict of exp(-param G) for the configured channel.
std::string cmd_symmetry(const RunConfig& cfg);
/// Coefficient vector of a generator given as matrix JSON.
std::string cmd_extract(const std::string& matrix_json);
/// Nonzero f and d entries (1-based indices) as JSON.
std::string cmd_tensors(int n);
/// The configured channel's generator as matrix JSON.
std::string cmd_channel(const RunConfig& cfg);

/// Matrix files: a JSON array of rows, each entry a [re, im] pair.
Superoperator read_matrix_json(const std::string& text);
std::string write_matrix_json(const Superoperator& s);

/// %.17g rendering used for every CSV float.
std::string format_double(double v);

/// Full CLI; returns the process exit code (0 ok, 1 usage, 2 verification
/// failure).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dmsym
