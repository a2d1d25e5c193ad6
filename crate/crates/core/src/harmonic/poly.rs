//! Sparse multivariate polynomials over ℂ in the seven variables z1..z7,
//! with exact symbolic partial derivatives, plus ratios of homogeneous
//! polynomials. These are the maps composed with the seven basis
//! eigenfunctions to build candidate harmonic morphisms.
//!
//! Text format: a sum of terms `c * z1^a1 * ... * z7^a7` where the complex
//! coefficient is written as `re+imj` (either suffix `i` or `j` works, and
//! a coefficient with both parts binds tightly to the following `*` chain,
//! as in `1+2j * z1`; parentheses are also accepted).

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::text::{format_complex, ParseError, Scanner};

/// Exponent vector over z1..z7.
pub type MultiIndex = [u32; 7];

const EXPONENT_CAP: u32 = 1000;

/// Sparse polynomial: multi-index → coefficient, zero coefficients pruned.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyFn {
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl PolyFn {
    pub fn zero() -> Self {
        PolyFn {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_terms([([0; 7], c)])
    }

    /// The variable z_{k+1} (0-based k).
    pub fn var(k: usize) -> Self {
        assert!(k < 7);
        let mut idx = [0u32; 7];
        idx[k] = 1;
        Self::monomial(idx, Complex64::new(1.0, 0.0))
    }

    pub fn monomial(idx: MultiIndex, coeff: Complex64) -> Self {
        Self::from_terms([(idx, coeff)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, Complex64)>) -> Self {
        let mut map = BTreeMap::new();
        for (idx, c) in terms {
            *map.entry(idx).or_insert(Complex64::ZERO) += c;
        }
        map.retain(|_, c| c.norm() != 0.0);
        PolyFn { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|idx| idx.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// All stored multi-indices have the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|idx| idx.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }

    /// Exact symbolic ∂/∂z_{k+1}.
    pub fn partial(&self, k: usize) -> PolyFn {
        assert!(k < 7);
        let mut map = BTreeMap::new();
        for (idx, c) in &self.terms {
            if idx[k] > 0 {
                let mut down = *idx;
                down[k] -= 1;
                *map.entry(down).or_insert(Complex64::ZERO) += c * idx[k] as f64;
            }
        }
        map.retain(|_, c| c.norm() != 0.0);
        PolyFn { terms: map }
    }

    pub fn eval(&self, z: &[Complex64; 7]) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (idx, c) in &self.terms {
            let mut t = *c;
            for k in 0..7 {
                if idx[k] > 0 {
                    t *= z[k].powu(idx[k]);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn scale(&self, s: Complex64) -> PolyFn {
        Self::from_terms(self.terms.iter().map(|(idx, c)| (*idx, c * s)))
    }

    pub fn add(&self, other: &PolyFn) -> PolyFn {
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(idx, c)| (*idx, *c)),
        )
    }

    /// Parses the textual sum-of-terms format.
    pub fn parse(input: &str) -> Result<PolyFn, ParseError> {
        let mut sc = Scanner::new(input);
        sc.skip_ws();
        if sc.at_end() {
            return Err(sc.err("empty polynomial"));
        }
        let mut terms: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        let mut first = true;
        loop {
            sc.skip_ws();
            if sc.at_end() {
                break;
            }
            let mut sign = 1.0;
            if sc.eat(b'-') {
                sign = -1.0;
            } else if sc.eat(b'+') {
            } else if !first {
                return Err(sc.err("expected '+' or '-' between terms"));
            }
            first = false;
            let (coeff, idx) = parse_term(&mut sc)?;
            *terms.entry(idx).or_insert(Complex64::ZERO) += coeff * sign;
        }
        terms.retain(|_, c| c.norm() != 0.0);
        Ok(PolyFn { terms })
    }
}

/// One product of factors: numeric coefficients and powers of variables.
fn parse_term(sc: &mut Scanner) -> Result<(Complex64, MultiIndex), ParseError> {
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut idx = [0u32; 7];
    loop {
        sc.skip_ws();
        match sc.peek() {
            Some(b'z') | Some(b'Z') => {
                sc.bump();
                let var_pos = sc.pos;
                let n = sc.scan_uint()?;
                if !(1..=7).contains(&n) {
                    return Err(ParseError {
                        pos: var_pos,
                        msg: format!("variable index must be 1..7, got z{n}"),
                    });
                }
                let mut exp = 1;
                if sc.eat(b'^') {
                    let exp_pos = sc.pos;
                    exp = sc.scan_uint()?;
                    if exp > EXPONENT_CAP {
                        return Err(ParseError {
                            pos: exp_pos,
                            msg: format!("exponent exceeds the cap of {EXPONENT_CAP}"),
                        });
                    }
                }
                idx[(n - 1) as usize] += exp;
            }
            Some(b'(') => {
                sc.bump();
                let z = sc.scan_complex()?;
                sc.skip_ws();
                if !sc.eat(b')') {
                    return Err(sc.err("expected ')'"));
                }
                coeff *= z;
            }
            Some(b'0'..=b'9') | Some(b'.') => {
                let x = sc.scan_float()?;
                if matches!(sc.peek(), Some(b) if Scanner::is_imag_suffix(b)) {
                    sc.bump();
                    coeff *= Complex64::new(0.0, x);
                } else {
                    // a tightly bound `re±imj` pair counts as one coefficient
                    let mark = sc.pos;
                    let mut absorbed = false;
                    if matches!(sc.peek(), Some(b'+') | Some(b'-')) {
                        let neg = sc.peek() == Some(b'-');
                        sc.bump();
                        if let Ok(y) = sc.scan_float() {
                            if matches!(sc.peek(), Some(b) if Scanner::is_imag_suffix(b)) {
                                sc.bump();
                                let im = if neg { -y } else { y };
                                coeff *= Complex64::new(x, im);
                                absorbed = true;
                            }
                        }
                    }
                    if !absorbed {
                        sc.pos = mark;
                        coeff *= Complex64::new(x, 0.0);
                    }
                }
            }
            _ => return Err(sc.err("expected a coefficient or a variable")),
        }
        sc.skip_ws();
        if !sc.eat(b'*') {
            break;
        }
    }
    Ok((coeff, idx))
}

impl fmt::Display for PolyFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            // pull a sign out front when the coefficient has a clean one
            let (neg, c) = if (c.im == 0.0 && c.re < 0.0)
                || (c.re == 0.0 && c.im < 0.0)
                || (c.re < 0.0 && c.im != 0.0)
            {
                (true, -c)
            } else {
                (false, *c)
            };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let has_vars = idx.iter().any(|&e| e > 0);
            let is_one = c == Complex64::new(1.0, 0.0);
            if !is_one || !has_vars {
                write!(f, "{}", format_complex(c))?;
                if has_vars {
                    write!(f, " * ")?;
                }
            }
            let mut first_var = true;
            for k in 0..7 {
                if idx[k] > 0 {
                    if !first_var {
                        write!(f, " * ")?;
                    }
                    first_var = false;
                    write!(f, "z{}", k + 1)?;
                    if idx[k] > 1 {
                        write!(f, "^{}", idx[k])?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// True when q = c·p for some scalar c (or either is zero).
pub fn linearly_dependent(p: &PolyFn, q: &PolyFn, tol: f64) -> bool {
    if p.is_zero() || q.is_zero() {
        return true;
    }
    let scale_p = p.terms.values().fold(0.0f64, |m, c| m.max(c.norm()));
    let scale_q = q.terms.values().fold(0.0f64, |m, c| m.max(c.norm()));
    // pivot at the jointly largest coefficient, then cross-check every term
    let keys: std::collections::BTreeSet<MultiIndex> =
        p.terms.keys().chain(q.terms.keys()).copied().collect();
    let zero = Complex64::ZERO;
    let pivot = keys
        .iter()
        .max_by(|a, b| {
            let na = p.terms.get(*a).unwrap_or(&zero).norm() / scale_p
                + q.terms.get(*a).unwrap_or(&zero).norm() / scale_q;
            let nb = p.terms.get(*b).unwrap_or(&zero).norm() / scale_p
                + q.terms.get(*b).unwrap_or(&zero).norm() / scale_q;
            na.total_cmp(&nb)
        })
        .copied()
        .expect("nonzero polynomials have terms");
    let pp = *p.terms.get(&pivot).unwrap_or(&zero);
    let qp = *q.terms.get(&pivot).unwrap_or(&zero);
    keys.iter().all(|k| {
        let pk = *p.terms.get(k).unwrap_or(&zero);
        let qk = *q.terms.get(k).unwrap_or(&zero);
        (pk * qp - qk * pp).norm() <= tol * scale_p * scale_q
    })
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum RationalMapError {
    #[error("numerator has degree {num_degree} but denominator has degree {den_degree}")]
    DegreeMismatch { num_degree: u32, den_degree: u32 },
    #[error("{which} is not homogeneous")]
    Inhomogeneous { which: &'static str },
    #[error("numerator and denominator must have positive degree")]
    ZeroDegree,
    #[error("numerator and denominator are linearly dependent")]
    LinearlyDependent,
}

impl RationalMapError {
    pub fn code(&self) -> &'static str {
        match self {
            RationalMapError::DegreeMismatch { .. } => "degree_mismatch",
            RationalMapError::Inhomogeneous { .. } => "inhomogeneous",
            RationalMapError::ZeroDegree => "zero_degree",
            RationalMapError::LinearlyDependent => "linearly_dependent",
        }
    }
}

/// Ratio P/Q of linearly independent homogeneous polynomials of the same
/// positive degree.
#[derive(Clone, Debug)]
pub struct RationalMap {
    num: PolyFn,
    den: PolyFn,
}

impl RationalMap {
    pub fn new(num: PolyFn, den: PolyFn) -> Result<Self, RationalMapError> {
        if !num.is_homogeneous() {
            return Err(RationalMapError::Inhomogeneous { which: "numerator" });
        }
        if !den.is_homogeneous() {
            return Err(RationalMapError::Inhomogeneous {
                which: "denominator",
            });
        }
        let (dn, dd) = (num.degree(), den.degree());
        if dn != dd {
            return Err(RationalMapError::DegreeMismatch {
                num_degree: dn,
                den_degree: dd,
            });
        }
        if dn == 0 || num.is_zero() || den.is_zero() {
            return Err(RationalMapError::ZeroDegree);
        }
        if linearly_dependent(&num, &den, 1e-12) {
            return Err(RationalMapError::LinearlyDependent);
        }
        Ok(RationalMap { num, den })
    }

    pub fn num(&self) -> &PolyFn {
        &self.num
    }

    pub fn den(&self) -> &PolyFn {
        &self.den
    }

    pub fn degree(&self) -> u32 {
        self.num.degree()
    }
}
