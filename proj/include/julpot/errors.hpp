#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace julpot {

using cplx = std::complex<double>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Root finder hit the sweep cap before meeting the residual target.
/// Carries the best iterate so callers can inspect or retry.
struct NonConvergence : Error {
    NonConvergence(const std::string& msg, std::vector<cplx> best, double res)
        : Error(msg), best_roots(std::move(best)), residual(res) {}
    std::vector<cplx> best_roots;
    double residual;
};

struct DegreeTooLow : Error { using Error::Error; };
struct EmptySet : Error { using Error::Error; };
struct WindowTooSmall : Error { using Error::Error; };
struct UnboundedSequence : Error { using Error::Error; };
struct CountExceedsCandidates : Error { using Error::Error; };
struct DuplicatePoints : Error { using Error::Error; };
struct UnsupportedShape : Error { using Error::Error; };
struct ExchangeStalled : Error { using Error::Error; };
struct UnknownFamily : Error { using Error::Error; };
struct TreeTooLarge : Error { using Error::Error; };
struct GridTooClose : Error { using Error::Error; };
struct IOError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

/// Orbit left the escape radius but did not reach the escape threshold
/// within max_iter; callers should retry with a larger iteration budget.
struct Indeterminate : Error { using Error::Error; };

struct IllConditioned : Error {
    IllConditioned(const std::string& msg, double cond)
        : Error(msg), condition_estimate(cond) {}
    double condition_estimate;
};

}  // namespace julpot
