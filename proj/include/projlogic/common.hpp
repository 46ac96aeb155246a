// Copyright 2026 The projlogic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Shared vocabulary: matrix aliases, error types, the tolerance record,
 * the seeded generator and the deterministic parallel loop.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace projlogic {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Precondition violation or malformed input.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
  public:
    using InvalidArgument::InvalidArgument;
};

/// A numerical self-check failed; indicates a bug rather than bad input.
class CertificationError : public Error {
  public:
    using Error::Error;
};

/// Raised by the star-product join/meet formulas on non-commuting events.
class IncompatibleError : public Error {
  public:
    using Error::Error;
};

/**
 * Every numerical threshold used by the library. A single record so that the
 * verification suites can be re-run at tighter or looser settings.
 */
struct Tolerances {
    double herm = 1e-12;             // Hermiticity, max entry deviation
    double hermitize_reject = 1e-6;  // make_hermitian rejection threshold
    double idem = 1e-10;             // T*T == T
    double trace = 1e-10;            // unit trace of points / states
    double psd = 1e-10;              // min eigenvalue of a state
    double orthonormal = 1e-10;      // basis Gram matrix vs identity
    double rank = 1e-8;              // eigenvalue counted as zero
    double order = 1e-9;             // operator order / lattice identities
    double commute = 1e-9;           // commutator max entry
    double tangent = 1e-9;           // tangency invariants
    double gauge = 1e-10;            // gauge invariance of omega and g
    double kahler = 1e-8;            // g / omega / j compatibility
    double hamiltonian = 1e-8;       // omega(X_f, Y) == df(Y)
    double poisson = 1e-9;           // analytic vs geometric bracket
    double observable_fit = 1e-6;    // residual threshold for observable type
    double frame = 1e-8;             // frame-sum deviation
    double star = 1e-9;              // star closed vs geometric, probe checks
    double operator_norm = 1e-8;     // operator-level certification
    double membership = 1e-10;       // grade range / grade classes
    double effect = 1e-9;            // 0 <= T <= I
    double tnorm = 1e-12;            // t-norm axioms
    double flow_projection = 1e-6;   // RK4 re-projection rejection
    double mc_sigmas = 4.0;          // Monte-Carlo acceptance band

    /// Set by name; throws InvalidArgument on unknown names.
    void set(std::string_view name, double value) {
        for (auto& entry : table()) {
            if (entry.name == name) {
                this->*(entry.member) = value;
                return;
            }
        }
        throw InvalidArgument("unknown tolerance '" + std::string(name) + "'");
    }

    double get(std::string_view name) const {
        for (auto& entry : table()) {
            if (entry.name == name) {
                return this->*(entry.member);
            }
        }
        throw InvalidArgument("unknown tolerance '" + std::string(name) + "'");
    }

    static std::vector<std::string> names() {
        std::vector<std::string> out;
        for (auto& entry : table()) {
            out.emplace_back(entry.name);
        }
        return out;
    }

  private:
    struct Entry {
        std::string_view name;
        double Tolerances::*member;
    };
    static const std::vector<Entry>& table() {
        static const std::vector<Entry> entries{
            {"herm", &Tolerances::herm},
            {"hermitize_reject", &Tolerances::hermitize_reject},
            {"idem", &Tolerances::idem},
            {"trace", &Tolerances::trace},
            {"psd", &Tolerances::psd},
            {"orthonormal", &Tolerances::orthonormal},
            {"rank", &Tolerances::rank},
            {"order", &Tolerances::order},
            {"commute", &Tolerances::commute},
            {"tangent", &Tolerances::tangent},
            {"gauge", &Tolerances::gauge},
            {"kahler", &Tolerances::kahler},
            {"hamiltonian", &Tolerances::hamiltonian},
            {"poisson", &Tolerances::poisson},
            {"observable_fit", &Tolerances::observable_fit},
            {"frame", &Tolerances::frame},
            {"star", &Tolerances::star},
            {"operator_norm", &Tolerances::operator_norm},
            {"membership", &Tolerances::membership},
            {"effect", &Tolerances::effect},
            {"tnorm", &Tolerances::tnorm},
            {"flow_projection", &Tolerances::flow_projection},
            {"mc_sigmas", &Tolerances::mc_sigmas},
        };
        return entries;
    }
};

/// Process-wide defaults; the CLI applies --tol overrides here.
inline Tolerances& tolerances() {
    static Tolerances tol;
    return tol;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Seeded generator. Never shared between tasks: parallel work receives
 * children from split() or derive(), so results depend only on the seed.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t seed() const { return seed_; }

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

    /// Standard complex Gaussian, E|z|^2 = 1.
    Complex complex_normal() {
        constexpr double kScale = 0.70710678118654752440;
        const double re = normal();
        const double im = normal();
        return {kScale * re, kScale * im};
    }

    std::uint64_t next_u64() { return engine_(); }

    Rng split() { return Rng(next_u64()); }

    /// Stream `stream` of `base`; independent of how many threads consume it.
    static Rng derive(std::uint64_t base, std::uint64_t stream) {
        std::uint64_t state = base ^ (0xd1b54a32d192ed03ULL * (stream + 1));
        return Rng(splitmix64(state));
    }

  private:
    static std::uint64_t mix(std::uint64_t seed) {
        std::uint64_t state = seed;
        return splitmix64(state);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

namespace detail {
inline std::atomic<unsigned>& thread_setting() {
    static std::atomic<unsigned> n{1};
    return n;
}
}  // namespace detail

inline void set_thread_count(unsigned n) { detail::thread_setting() = std::max(1U, n); }
inline unsigned thread_count() { return detail::thread_setting(); }

/**
 * Runs fn(i) for i in [0, n_tasks). Work is distributed dynamically, so
 * callers must write results by index and merge in index order.
 */
template <class Fn>
void parallel_for(std::size_t n_tasks, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), n_tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n_tasks; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

/// tr(a b) without forming the product.
inline Complex trace_of_product(const Matrix& a, const Matrix& b) {
    return (a.transpose().cwiseProduct(b)).sum();
}

inline void require_same_dim(Index a, Index b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                                " vs " + std::to_string(b));
    }
}

}  // namespace projlogic
