//! Commutative unital Z-algebras of finite free rank, given by a basis,
//! a degree per basis element and dense multiplication structure constants.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("truncation order must be at least 1")]
    ZeroTruncation,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error(
        "polynomial is not monic (leading coefficient {0}); Z[x]/(p) is then not a free \
         Z-module of finite rank"
    )]
    NotMonic(i64),
    #[error("structure constants overflow 64 bits")]
    Overflow,
    #[error("algebra is not graded")]
    Ungraded,
    #[error("invalid structure constants: {0}")]
    Invalid(String),
    #[error("unknown algebra spec `{0}` (expected trunc:m, poly:c0,...,1 or window:J)")]
    UnknownSpec(String),
}

/// Index of a basis element.
pub type BasisIndex = u8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<String>,
    degrees: Vec<u32>,
    /// `mult[(k * r + l) * r + m]` is the coefficient of `b_m` in `b_k * b_l`.
    mult: Vec<i64>,
    graded: bool,
    window: Option<u32>,
    spec: String,
}

/// Graded dimension: `coefficients[d]` is the rank of the degree-`d` part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDim {
    pub coefficients: Vec<u64>,
}

impl QDim {
    pub fn rank(&self) -> u64 {
        self.coefficients.iter().sum()
    }
}

fn power_label(k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    }
}

impl Algebra {
    /// Build an algebra from raw data, checking unit, commutativity,
    /// associativity and (when `graded`) homogeneity on the whole basis.
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<u32>,
        mult: Vec<i64>,
        graded: bool,
        spec: impl Into<String>,
    ) -> Result<Self, AlgebraError> {
        let r = labels.len();
        if r == 0 || r > usize::from(BasisIndex::MAX) {
            return Err(AlgebraError::Invalid(format!("rank {r} out of range")));
        }
        if degrees.len() != r || mult.len() != r * r * r {
            return Err(AlgebraError::Invalid("dimension mismatch".into()));
        }
        if degrees[0] != 0 {
            return Err(AlgebraError::Invalid("the unit must have degree 0".into()));
        }
        let algebra = Algebra { labels, degrees, mult, graded, window: None, spec: spec.into() };
        algebra.validate()?;
        Ok(algebra)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let r = self.rank();
        for l in 0..r {
            let expected: Vec<i64> = (0..r).map(|m| i64::from(m == l)).collect();
            if self.product(0, l) != expected.as_slice() {
                return Err(AlgebraError::Invalid(format!("b_0 is not a unit on b_{l}")));
            }
        }
        for k in 0..r {
            for l in 0..r {
                if self.product(k, l) != self.product(l, k) {
                    return Err(AlgebraError::Invalid(format!("b_{k} b_{l} != b_{l} b_{k}")));
                }
                if self.graded {
                    for (m, &c) in self.product(k, l).iter().enumerate() {
                        if c != 0 && self.degrees[m] != self.degrees[k] + self.degrees[l] {
                            return Err(AlgebraError::Invalid(format!(
                                "b_{k} b_{l} has a component of the wrong degree"
                            )));
                        }
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let left = self.multiply_checked(self.product(i, j), &unit_vector(r, k))?;
                    let right = self.multiply_checked(&unit_vector(r, i), self.product(j, k))?;
                    if left != right {
                        return Err(AlgebraError::Invalid(format!(
                            "(b_{i} b_{j}) b_{k} != b_{i} (b_{j} b_{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Z[x]/(x^m)`, graded by powers of `x`.
    pub fn truncated(m: usize) -> Result<Self, AlgebraError> {
        if m == 0 {
            return Err(AlgebraError::ZeroTruncation);
        }
        let mut coefficients = vec![0i64; m + 1];
        coefficients[m] = 1;
        let mut algebra = Self::deformed(&coefficients)?;
        algebra.spec = format!("trunc:{m}");
        Ok(algebra)
    }

    /// `Z[x]/(p)` for a monic `p`, coefficients listed from the constant term up.
    /// Graded exactly when `p = x^m`; otherwise all degrees are reported as 0.
    pub fn deformed(coefficients: &[i64]) -> Result<Self, AlgebraError> {
        let mut p = coefficients.to_vec();
        while p.len() > 1 && p.last() == Some(&0) {
            p.pop();
        }
        if p.len() < 2 {
            return Err(AlgebraError::ConstantPolynomial);
        }
        let lead = *p.last().unwrap();
        if lead != 1 {
            return Err(AlgebraError::NotMonic(lead));
        }
        let m = p.len() - 1;
        let graded = p[..m].iter().all(|&c| c == 0);
        let mut mult = vec![0i64; m * m * m];
        for a in 0..m {
            for b in 0..m {
                let reduced = reduce_power(a + b, &p)?;
                let base = (a * m + b) * m;
                mult[base..base + m].copy_from_slice(&reduced);
            }
        }
        let degrees = if graded { (0..m as u32).collect() } else { vec![0; m] };
        let spec = format!(
            "poly:{}",
            p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        );
        Algebra::new((0..m).map(power_label).collect(), degrees, mult, graded, spec)
    }

    /// `Z[x]` seen through the degree window `j <= window`, realised as
    /// `Z[x]/(x^{window+1})`. Results are exact for every degree in the window.
    pub fn poly_window(window: u32) -> Result<Self, AlgebraError> {
        let mut algebra = Self::truncated(window as usize + 1)?;
        algebra.window = Some(window);
        algebra.spec = format!("window:{window}");
        Ok(algebra)
    }

    /// Parse `trunc:m`, `poly:c0,c1,...,1` or `window:J`.
    pub fn from_spec(spec: &str) -> Result<Self, AlgebraError> {
        let unknown = || AlgebraError::UnknownSpec(spec.to_string());
        let (kind, arg) = spec.trim().split_once(':').ok_or_else(unknown)?;
        match kind {
            "trunc" => Self::truncated(arg.trim().parse().map_err(|_| unknown())?),
            "window" => Self::poly_window(arg.trim().parse().map_err(|_| unknown())?),
            "poly" => {
                let coefficients = arg
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| unknown())?;
                Self::deformed(&coefficients)
            }
            _ => Err(unknown()),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, b: BasisIndex) -> u32 {
        self.degrees[usize::from(b)]
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn window(&self) -> Option<u32> {
        self.window
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    /// Truncation order `m` when this is `Z[x]/(x^m)` used as itself (not as a window).
    pub fn truncation_order(&self) -> Option<usize> {
        (self.graded && self.window.is_none() && self.is_monomial_truncation()).then(|| self.rank())
    }

    fn is_monomial_truncation(&self) -> bool {
        let r = self.rank();
        (0..r).all(|a| {
            (0..r).all(|b| {
                let expected: Vec<i64> = (0..r).map(|m| i64::from(a + b < r && m == a + b)).collect();
                self.product(a, b) == expected.as_slice()
            })
        })
    }

    /// Whether `A = Z1 ⊕ A'` with every other basis element of positive degree.
    pub fn is_pointed(&self) -> bool {
        self.graded && self.degrees[1..].iter().all(|&d| d >= 1)
    }

    /// Coefficients of `b_k * b_l` in the basis.
    pub fn product(&self, k: usize, l: usize) -> &[i64] {
        let r = self.rank();
        let base = (k * r + l) * r;
        &self.mult[base..base + r]
    }

    pub fn qdim(&self) -> Result<QDim, AlgebraError> {
        if !self.graded {
            return Err(AlgebraError::Ungraded);
        }
        let mut coefficients = vec![0u64; self.max_degree() as usize + 1];
        for &d in &self.degrees {
            coefficients[d as usize] += 1;
        }
        Ok(QDim { coefficients })
    }

    /// Bilinear product of two coefficient vectors.
    ///
    /// # Panics
    /// If a vector has the wrong length or the product overflows `i64`.
    pub fn multiply(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        self.multiply_checked(u, v).expect("algebra product overflow")
    }

    fn multiply_checked(&self, u: &[i64], v: &[i64]) -> Result<Vec<i64>, AlgebraError> {
        let r = self.rank();
        assert!(u.len() == r && v.len() == r, "coefficient vectors must have length {r}");
        let mut out = vec![0i64; r];
        for (k, &uk) in u.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (l, &vl) in v.iter().enumerate().filter(|(_, c)| **c != 0) {
                let scale = uk.checked_mul(vl).ok_or(AlgebraError::Overflow)?;
                for (slot, &c) in out.iter_mut().zip(self.product(k, l)) {
                    *slot = c
                        .checked_mul(scale)
                        .and_then(|t| slot.checked_add(t))
                        .ok_or(AlgebraError::Overflow)?;
                }
            }
        }
        Ok(out)
    }
}

fn unit_vector(r: usize, k: usize) -> Vec<i64> {
    (0..r).map(|m| i64::from(m == k)).collect()
}

/// Coefficients of `x^n mod p` for monic `p` of degree `m = p.len() - 1`.
fn reduce_power(n: usize, p: &[i64]) -> Result<Vec<i64>, AlgebraError> {
    let m = p.len() - 1;
    let mut current = vec![0i64; m];
    if n < m {
        current[n] = 1;
        return Ok(current);
    }
    // start from x^{m-1} and multiply by x repeatedly
    current[m - 1] = 1;
    for _ in m - 1..n {
        let top = current[m - 1];
        for k in (1..m).rev() {
            current[k] = top
                .checked_mul(p[k])
                .and_then(|t| current[k - 1].checked_sub(t))
                .ok_or(AlgebraError::Overflow)?;
        }
        current[0] = top.checked_mul(p[0]).and_then(|t| 0i64.checked_sub(t)).ok_or(AlgebraError::Overflow)?;
    }
    Ok(current)
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_two() {
        let a = Algebra::truncated(2).unwrap();
        assert_eq!(a.rank(), 2);
        assert_eq!(a.product(1, 1), &[0, 0]);
        assert_eq!(a.qdim().unwrap().coefficients, vec![1, 1]);
        assert_eq!(a.truncation_order(), Some(2));
        assert!(a.is_pointed());
    }

    #[test]
    fn truncated_edge_cases() {
        let z = Algebra::truncated(1).unwrap();
        assert_eq!(z.rank(), 1);
        assert_eq!(z.qdim().unwrap().coefficients, vec![1]);
        assert_eq!(Algebra::truncated(0), Err(AlgebraError::ZeroTruncation));
        let a3 = Algebra::truncated(3).unwrap();
        assert_eq!(a3.product(1, 1), &[0, 0, 1]);
        assert_eq!(a3.product(2, 1), &[0, 0, 0]);
        assert_eq!(a3.qdim().unwrap().coefficients, vec![1, 1, 1]);
    }

    #[test]
    fn deformed_quadratic() {
        // x^2 - b x - a with a = 3, b = 2: x * x = 3 + 2x
        let a = Algebra::deformed(&[-3, -2, 1]).unwrap();
        assert!(!a.is_graded());
        assert_eq!(a.product(1, 1), &[3, 2]);
        assert_eq!(a.degrees(), &[0, 0]);
        assert_eq!(a.qdim(), Err(AlgebraError::Ungraded));
    }

    #[test]
    fn deformed_cyclic() {
        let a = Algebra::deformed(&[-1, 0, 0, 1]).unwrap();
        assert_eq!(a.product(2, 1), &[1, 0, 0]);
        assert_eq!(a.product(2, 2), &[0, 1, 0]);
    }

    #[test]
    fn deformed_monomial_matches_truncated() {
        for m in 1..6 {
            let mut p = vec![0; m + 1];
            p[m] = 1;
            let d = Algebra::deformed(&p).unwrap();
            let t = Algebra::truncated(m).unwrap();
            assert_eq!(d.mult, t.mult);
            assert_eq!(d.degrees, t.degrees);
            assert!(d.is_graded());
        }
    }

    #[test]
    fn non_monic_rejected() {
        let err = Algebra::deformed(&[1, 2]).unwrap_err();
        assert_eq!(err, AlgebraError::NotMonic(2));
        assert!(err.to_string().contains("not a free"));
    }

    #[test]
    fn windows() {
        let w = Algebra::poly_window(0).unwrap();
        assert_eq!(w.rank(), 1);
        assert_eq!(w.window(), Some(0));
        let w = Algebra::poly_window(5).unwrap();
        assert_eq!(w.rank(), 6);
        assert_eq!(w.truncation_order(), None);
        assert_eq!(w.spec(), "window:5");
    }

    #[test]
    fn spec_strings() {
        assert_eq!(Algebra::from_spec("trunc:3").unwrap(), Algebra::truncated(3).unwrap());
        assert_eq!(Algebra::from_spec("poly:-1,0,0,1").unwrap().product(2, 1), &[1, 0, 0]);
        assert_eq!(Algebra::from_spec("window:8").unwrap().window(), Some(8));
        assert!(matches!(Algebra::from_spec("frob:2"), Err(AlgebraError::UnknownSpec(_))));
        assert!(matches!(Algebra::from_spec("trunc:x"), Err(AlgebraError::UnknownSpec(_))));
    }

    #[test]
    fn multiply_is_bilinear() {
        let a = Algebra::deformed(&[-3, -2, 1]).unwrap();
        assert_eq!(a.multiply(&[1, 0], &[5, 7]), vec![5, 7]);
        // (1 + x)(2 + x) = 2 + 3x + x^2 = 5 + 5x
        assert_eq!(a.multiply(&[1, 1], &[2, 1]), vec![5, 5]);
    }

    #[test]
    fn bad_structure_constants_rejected() {
        // non-commutative "product" on rank 2
        let mult = vec![1, 0, 0, 1, 0, 1, 1, 0];
        let labels = vec!["1".to_string(), "y".to_string()];
        assert!(Algebra::new(labels.clone(), vec![0, 1], mult, false, "bad").is_ok());
        let mult = vec![1, 0, 0, 1, 0, 1, 0, 1];
        assert!(Algebra::new(labels, vec![0, 1], mult, true, "bad").is_err());
    }
}
