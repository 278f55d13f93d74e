use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// One approximation formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodId {
    /// Stirling, `√(2πx) (x/e)^x`.
    Stirling,
    Burnside,
    Gosper,
    Mortici,
    Ramanujan,
    /// Laplace's (Stirling) series truncated after the `x^-k` term, `k` in `1..=4`.
    Laplace(u8),
    Nemes,
    Windschitl,
    HirschhornVillarino,
    Chen,
    /// Ramanujan's formula with the Hirschhorn–Villarino θ expansion extended
    /// by an `A/x^3` term.
    Sam,
    /// Chen's formula times `1 + 10^100/x^8`: asymptotically exact with an
    /// `O(x^-7)`-looking error, yet useless at any practical size.
    Pathological,
}

impl MethodId {
    /// Every registered method, in table order.
    pub const ALL: [MethodId; 15] = [
        MethodId::Stirling,
        MethodId::Burnside,
        MethodId::Gosper,
        MethodId::Mortici,
        MethodId::Ramanujan,
        MethodId::Laplace(1),
        MethodId::Laplace(2),
        MethodId::Laplace(3),
        MethodId::Laplace(4),
        MethodId::Nemes,
        MethodId::Windschitl,
        MethodId::HirschhornVillarino,
        MethodId::Chen,
        MethodId::Sam,
        MethodId::Pathological,
    ];

    /// The nine refinements of Stirling's formula, each written as Stirling
    /// times a correction factor that tends to one.
    pub const CORRECTED: [MethodId; 9] = [
        MethodId::Burnside,
        MethodId::Gosper,
        MethodId::Mortici,
        MethodId::Ramanujan,
        MethodId::Laplace(4),
        MethodId::Nemes,
        MethodId::Windschitl,
        MethodId::HirschhornVillarino,
        MethodId::Chen,
    ];

    /// Short code used in tables and on the command line.
    pub fn code(&self) -> String {
        match self {
            MethodId::Stirling => "S".into(),
            MethodId::Burnside => "B".into(),
            MethodId::Gosper => "G".into(),
            MethodId::Mortici => "M".into(),
            MethodId::Ramanujan => "R".into(),
            MethodId::Laplace(k) => format!("L{k}"),
            MethodId::Nemes => "N".into(),
            MethodId::Windschitl => "W".into(),
            MethodId::HirschhornVillarino => "HV".into(),
            MethodId::Chen => "C".into(),
            MethodId::Sam => "SAM".into(),
            MethodId::Pathological => "PATH".into(),
        }
    }

    pub fn spec(&self) -> MethodSpec {
        MethodSpec::of(*self)
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let id = match s.trim().to_ascii_uppercase().as_str() {
            "S" => MethodId::Stirling,
            "B" => MethodId::Burnside,
            "G" => MethodId::Gosper,
            "M" => MethodId::Mortici,
            "R" => MethodId::Ramanujan,
            "N" => MethodId::Nemes,
            "W" => MethodId::Windschitl,
            "HV" => MethodId::HirschhornVillarino,
            "C" => MethodId::Chen,
            "SAM" => MethodId::Sam,
            "PATH" => MethodId::Pathological,
            other => match other.strip_prefix('L').and_then(|k| k.parse::<u8>().ok()) {
                Some(k @ 1..=4) => MethodId::Laplace(k),
                _ => return Err(Error::Parse(format!("unknown method id `{s}`"))),
            },
        };
        Ok(id)
    }
}

/// A method together with the exact constants its formula uses.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSpec {
    pub id: MethodId,
    pub constants: Vec<Rational>,
    pub description: String,
}

fn q(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

/// Coefficients of `x^-1 .. x^-4` in Laplace's series.
pub(crate) fn laplace_coefficients() -> [Rational; 4] {
    [q(1, 12), q(1, 288), q(-139, 51840), q(-571, 2_488_320)]
}

/// The constant `A` of the tweaked Ramanujan formula.
pub(crate) fn sam_constant() -> Rational {
    Rational::from((
        Integer::from(380_279_456_577u64),
        Integer::from(722_091_376_690u64),
    ))
}

/// `1 - 11/(8x) + 79/(112 x^2)` coefficients, shared by HV and SAM.
pub(crate) fn hv_theta_coefficients() -> [Rational; 3] {
    [q(1, 1), q(-11, 8), q(79, 112)]
}

pub(crate) fn chen_constants() -> [Rational; 3] {
    [q(24, 7), q(1, 2), q(53, 210)]
}

pub(crate) fn pathological_scale() -> Integer {
    Integer::from(Integer::u_pow_u(10, 100))
}

impl MethodSpec {
    pub fn of(id: MethodId) -> MethodSpec {
        let (constants, description): (Vec<Rational>, &str) = match id {
            MethodId::Stirling => (vec![], "√(2πx) (x/e)^x"),
            MethodId::Burnside => (vec![q(1, 2)], "√(2π) ((x+1/2)/e)^(x+1/2)"),
            MethodId::Gosper => (vec![q(1, 3)], "√π (x/e)^x √(2x+1/3)"),
            MethodId::Mortici => (vec![q(1, 12)], "√(2πx) (x/e + 1/(12ex))^x"),
            MethodId::Ramanujan => (
                vec![q(8, 1), q(4, 1), q(1, 1), q(1, 30)],
                "√π (x/e)^x (8x³+4x²+x+1/30)^(1/6)",
            ),
            MethodId::Laplace(k) => (
                laplace_coefficients()[..usize::from(k.clamp(1, 4))].to_vec(),
                "√(2π) x^(x+1/2) e^(-x) (1 + Σ c_i/x^i)",
            ),
            MethodId::Nemes => (vec![q(1, 10)], "√(2πx) (x/e)^x (1 + 1/(12x²-1/10))^x"),
            MethodId::Windschitl => (vec![q(1, 2)], "√(2πx) (x/e)^x (x sinh(1/x))^(x/2)"),
            MethodId::HirschhornVillarino => (
                hv_theta_coefficients().to_vec(),
                "√π (x/e)^x (8x³+4x²+x+(1-11/(8x)+79/(112x²))/30)^(1/6)",
            ),
            MethodId::Chen => (
                chen_constants().to_vec(),
                "√(2πx) (x/e)^x (1 + 1/(12x³+24x/7-1/2))^(x²+53/210)",
            ),
            MethodId::Sam => (
                {
                    let mut c = hv_theta_coefficients().to_vec();
                    c.push(sam_constant());
                    c
                },
                "√π (x/e)^x (8x³+4x²+x+(1-11/(8x)+79/(112x²)+A/x³)/30)^(1/6)",
            ),
            MethodId::Pathological => (
                {
                    let mut c = chen_constants().to_vec();
                    c.push(Rational::from(pathological_scale()));
                    c
                },
                "Chen × (1 + 10^100/x^8)",
            ),
        };
        MethodSpec {
            id,
            constants,
            description: description.to_string(),
        }
    }

    /// Constants rendered as `p/q` (or `p` when integral).
    pub fn constants_text(&self) -> Vec<String> {
        self.constants.iter().map(|c| c.to_string()).collect()
    }

    pub fn parse_constant(text: &str) -> Result<Rational> {
        Rational::from_str_radix(text.trim(), 10)
            .map_err(|e| Error::Parse(format!("`{text}` is not a rational: {e}")))
    }
}
