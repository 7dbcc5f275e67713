#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dynwave {

/// One time level of the solution on nodes k = 0..K. Ghost nodes are never
/// stored; operators that need them take the ghost values explicitly.
using Field = std::vector<double>;

/// Uniform space-time grid on [0, L] x [0, T].
class Grid {
public:
    /// Throws std::invalid_argument unless L > 0, T > 0, K >= 2 and N >= 2.
    Grid(double L, double T, int K, int N);

    double L() const noexcept { return L_; }
    double T() const noexcept { return T_; }
    int K() const noexcept { return K_; }
    int N() const noexcept { return N_; }
    double dx() const noexcept { return dx_; }
    double dt() const noexcept { return dt_; }

    std::size_t nodes() const noexcept { return static_cast<std::size_t>(K_) + 1; }
    double x(int k) const noexcept { return k * dx_; }
    double t(int n) const noexcept { return n * dt_; }

    Field zeros() const { return Field(nodes(), 0.0); }

private:
    double L_;
    double T_;
    int K_;
    int N_;
    double dx_;
    double dt_;
};

/// The two consecutive time levels (U^{n-1}, U^n) carried by the two-step schemes.
struct StatePair {
    Field prev;
    Field curr;
    int n = 1;
};

// Difference operators -------------------------------------------------------

/// out[k] = (f[k+1] - f[k]) / dx for k = 0..K-1.
std::vector<double> forward_diff(std::span<const double> f, const Grid& grid);

/// Second difference at every stored node. The caller supplies the ghost
/// values f[-1] and f[K+1].
std::vector<double> second_diff(std::span<const double> f, double ghost_left, double ghost_right,
                                const Grid& grid);

/// Same as above for a vector that already carries the ghosts (length K+3,
/// index 0 holds f[-1]).
std::vector<double> second_diff(std::span<const double> f_ext, const Grid& grid);

// Summation and norms ----------------------------------------------------------

/// Trapezoidal sum (f[0]/2 + f[1] + ... + f[K-1] + f[K]/2) * dx.
double trapz_sum(std::span<const double> f, const Grid& grid);

/// Defect of the summation-by-parts identity
///   sum_{k<K} f_k (d+ g)_k dx + trapz((d- f) g) - [(mu- f) g]_0^K.
/// `f_ext` has length K+2 and carries the ghost value f[-1] at index 0.
/// Vanishes up to rounding for every input.
double sbp_defect(std::span<const double> f_ext, std::span<const double> g, const Grid& grid);

double norm_l2(std::span<const double> f, const Grid& grid);
double seminorm_d(std::span<const double> f, const Grid& grid);
double norm_h1(std::span<const double> f, const Grid& grid);
double norm_inf(std::span<const double> f) noexcept;

/// Constant of the discrete Sobolev inequality ||f||_inf <= C_S ||f||_H1 on [0, L].
double sobolev_constant(double L);

}  // namespace dynwave
