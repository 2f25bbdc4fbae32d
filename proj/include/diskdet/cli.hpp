#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "diskdet/flux.hpp"

namespace diskdet::cli {

enum ExitCode : int {
    ok = 0,
    bad_config = 1,
    domain_error = 2,
    no_convergence = 3,
    inconsistent = 4,
};

/// Malformed input; the message names the offending field.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Tolerances {
    std::optional<double> quadrature;
    std::optional<double> zeta_tail;
};

struct RunConfig {
    enum class ProfileType { polynomial, tabulated };

    double radius = 1.0;
    ProfileType type = ProfileType::polynomial;
    std::vector<double> coefficients;  ///< polynomial in r^2
    std::vector<double> r;             ///< tabulated nodes
    std::vector<double> phi;
    Tolerances tolerances;
    std::optional<std::string> output_path;
};

/// {"radius": R, "profile": {"type": "polynomial", "coefficients": [...]}
///  | {"type": "tabulated", "r": [...], "phi": [...]},
///  "tolerances": {"quadrature": q, "zeta_tail": z}, "output_path": "..."}
RunConfig parse_config(std::string_view text);
std::string serialize_config(const RunConfig& config);
FluxProfile make_profile(const RunConfig& config);

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct SelftestOptions {
    bool inject_bessel_fault = false;
};

/// Every module invariant, one entry each.
std::vector<CheckResult> selftest(const SelftestOptions& options = {});

/// Entry point; args excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace diskdet::cli
