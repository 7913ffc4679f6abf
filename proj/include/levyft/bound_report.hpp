#pragma once

namespace levyft {

enum class MMethod { HardyNumeric, MTilde, MTildeGaussian };
enum class CMethod { SimplifiedC, NumericEnvelope };
/// Constant in front of the quadrature term: Theorem keeps the 1/(2 pi) of
/// the quadrature theorem, Explicit the 1/pi of the assembled explicit
/// bound (a factor-2 relaxation used by the reported tables).
enum class Convention { Theorem, Explicit };

/// Decomposed a-posteriori error bound for the discretized inverse
/// transform.  Bounds the *undiscounted* value-function error
/// |f(tau,x) - f_{dw,n}(tau,x)|; multiplying by e^{-r tau} bounds the
/// price error.
struct BoundReport {
    double quadrature_part = 0.0;
    double truncation_part = 0.0;
    double total = 0.0;
    double m_value = 0.0;
    MMethod m_method = MMethod::MTildeGaussian;
    Convention convention = Convention::Theorem;
    CMethod c_method = CMethod::SimplifiedC;
    double tail_lower_limit = 0.0;  // n*dw under the convexity certificate, (n-1/2)*dw otherwise
};

}  // namespace levyft
