use std::fmt;

/// Identifies which evaluation route produced a result.
///
/// The short tags (`b1` .. `b7`, `thm1`) name the individual Schlomilch-type
/// sum representations and double as the method names accepted by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodKind {
    /// Power series in r^2 with extended-zeta coefficients.
    Series,
    /// Semi-infinite Bessel integral.
    Integral,
    /// Integer-order derivative sum, order n in {2, 3, 4}.
    Thm1Integer,
    /// Fractional-order derivative sum (experimental).
    Thm1Fractional,
    /// Third-derivative sum for mu = 1/2.
    B1,
    /// First-derivative sum for mu = -1/2.
    B2,
    /// Conjugate-pair K sum for mu = 0.
    B3,
    /// Conjugate-pair K sum for mu = 1.
    B4,
    /// Recursive conjugate-pair K sum for mu = 2.
    B7,
    /// Direct summation of the classical (p = 0) series.
    Classical,
    /// Extended zeta via its integral representation.
    ZetaIntegral,
    /// Extended zeta via the Schlomilch K-series.
    ZetaKSeries,
    /// Ordinary Riemann zeta (p = 0 limit).
    ZetaRiemann,
    /// Raw adaptive quadrature result.
    Quadrature,
    /// Exponentially damped term sum (Laplace-type families).
    TermSum,
    /// Richardson-extrapolated central difference stencil.
    Stencil,
    /// Grunwald-Letnikov fractional sum.
    GlSum,
}

impl MethodKind {
    /// Stable string tag used in CLI output and config.
    pub fn tag(self) -> &'static str {
        match self {
            MethodKind::Series => "series",
            MethodKind::Integral => "integral",
            MethodKind::Thm1Integer => "thm1",
            MethodKind::Thm1Fractional => "thm1-frac",
            MethodKind::B1 => "b1",
            MethodKind::B2 => "b2",
            MethodKind::B3 => "b3",
            MethodKind::B4 => "b4",
            MethodKind::B7 => "b7",
            MethodKind::Classical => "classical",
            MethodKind::ZetaIntegral => "zeta-integral",
            MethodKind::ZetaKSeries => "zeta-kseries",
            MethodKind::ZetaRiemann => "zeta-riemann",
            MethodKind::Quadrature => "quadrature",
            MethodKind::TermSum => "term-sum",
            MethodKind::Stencil => "stencil",
            MethodKind::GlSum => "gl-sum",
        }
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Value with an error estimate and the work that produced it.
///
/// `err_estimate` is a best-effort forward bound (truncation plus accumulated
/// kernel error), not a rigorous interval; acceptance checks treat it as
/// trustworthy only up to a small factor.
#[derive(Debug, Clone, Copy)]
pub struct EvalResult {
    pub value: f64,
    pub err_estimate: f64,
    /// Series terms, sum terms, or quadrature nodes, whichever applies.
    pub terms_or_nodes: u64,
    pub method: MethodKind,
}

impl EvalResult {
    pub fn new(value: f64, err_estimate: f64, terms_or_nodes: u64, method: MethodKind) -> Self {
        EvalResult {
            value,
            err_estimate,
            terms_or_nodes,
            method,
        }
    }
}
