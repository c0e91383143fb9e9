//! Changes of basis for Ehrhart polynomials.
//!
//! Three bases of the polynomials of degree at most `d` are used:
//! the power basis `n^k`, the magic basis `n^i (1+n)^(d-i)`, and the
//! binomial basis `C(n+d-j, d)` whose coefficients form the h*-vector.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{
    big_binom, binom_linear, common_denominator, rational_str, rational_vec_str, Poly, Rational,
};

/// Coefficients `a_0..a_d` of `sum a_i n^i (1+n)^(d-i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagicForm {
    pub d: usize,
    #[serde(rename = "coefficients", with = "rational_vec_str")]
    pub a: Vec<Rational>,
}

/// Coefficients `h*_0..h*_d` of `sum h*_j C(n+d-j, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HStarVector {
    pub d: usize,
    #[serde(rename = "coefficients", with = "rational_vec_str")]
    pub h: Vec<Rational>,
}

impl MagicForm {
    pub fn new(a: Vec<Rational>) -> Self {
        assert!(!a.is_empty(), "a magic form has at least a_0");
        MagicForm { d: a.len() - 1, a }
    }
}

impl HStarVector {
    pub fn new(h: Vec<Rational>) -> Self {
        assert!(!h.is_empty(), "an h*-vector has at least h*_0");
        HStarVector { d: h.len() - 1, h }
    }

    pub fn sum(&self) -> Rational {
        self.h.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    /// `h*(t)` as a polynomial; the variable is printed as `n` but means `t`.
    pub fn as_poly(&self) -> Poly {
        Poly::from_coeffs(self.h.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub index: usize,
    #[serde(with = "rational_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MagicVerdict {
    Positive,
    Negative { witnesses: Vec<Witness> },
}

impl MagicVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, MagicVerdict::Positive)
    }

    pub fn witnesses(&self) -> &[Witness] {
        match self {
            MagicVerdict::Positive => &[],
            MagicVerdict::Negative { witnesses } => witnesses,
        }
    }
}

fn check_fits(p: &Poly, d: usize) -> Result<()> {
    match p.degree() {
        Some(deg) if deg > d => Err(Error::DegreeTooHigh {
            degree: deg,
            ambient: d,
        }),
        _ => Ok(()),
    }
}

/// Row `C(m, 0..=m)` as signed integers.
fn binom_row(m: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(m + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..m {
        c = c * BigInt::from(m - k) / BigInt::from(k + 1);
        row.push(c.clone());
    }
    row
}

/// Expands `n^k = n^k ((1+n) - n)^(d-k)`, which gives
/// `a_i = sum_{k<=i} c_k (-1)^(i-k) C(d-k, i-k)`.
///
/// Work is done on integer numerators over a common denominator so long
/// scans stay in big-integer arithmetic.
pub fn power_to_magic(p: &Poly, d: usize) -> Result<MagicForm> {
    check_fits(p, d)?;
    let den = common_denominator(p.coeffs());
    let num: Vec<BigInt> = (0..=d).map(|k| (p.coeff(k) * &den).to_integer()).collect();
    let mut a = vec![BigInt::zero(); d + 1];
    for (k, ck) in num.iter().enumerate() {
        if ck.is_zero() {
            continue;
        }
        let row = binom_row(d - k);
        for (t, b) in row.iter().enumerate() {
            let term = ck * b;
            if t % 2 == 0 {
                a[k + t] += term;
            } else {
                a[k + t] -= term;
            }
        }
    }
    Ok(MagicForm {
        d,
        a: a.into_iter()
            .map(|x| Rational::new(x, den.clone()))
            .collect(),
    })
}

/// `sum a_i n^i (1+n)^(d-i)` in the power basis.
pub fn magic_to_power(m: &MagicForm) -> Poly {
    let d = m.d;
    let mut out = vec![Rational::zero(); d + 1];
    for (i, ai) in m.a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (t, b) in binom_row(d - i).into_iter().enumerate() {
            out[i + t] += ai * Rational::from_integer(b);
        }
    }
    Poly::from_coeffs(out)
}

pub fn is_magic_positive(m: &MagicForm) -> MagicVerdict {
    let witnesses: Vec<Witness> =
        m.a.iter()
            .enumerate()
            .filter(|(_, a)| a.is_negative())
            .map(|(index, a)| Witness {
                index,
                value: a.clone(),
            })
            .collect();
    if witnesses.is_empty() {
        MagicVerdict::Positive
    } else {
        MagicVerdict::Negative { witnesses }
    }
}

pub fn is_palindromic(m: &MagicForm) -> bool {
    m.a.iter().eq(m.a.iter().rev())
}

/// `h*_j = sum_{i<=j} (-1)^i C(d+1, i) p(j-i)`.
pub fn power_to_hstar(p: &Poly, d: usize) -> Result<HStarVector> {
    check_fits(p, d)?;
    let values: Vec<Rational> = (0..=d).map(|x| p.eval_int(x as i64)).collect();
    let row = binom_row(d + 1);
    let h: Vec<Rational> = (0..=d)
        .map(|j| {
            (0..=j).fold(Rational::zero(), |acc, i| {
                let term = &values[j - i] * Rational::from_integer(row[i].clone());
                if i % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    let hv = HStarVector { d, h };
    for x in 0..=d as u64 {
        let lhs = eval_hstar(&hv, x);
        assert_eq!(lhs, values[x as usize], "h* expansion disagrees at n = {x}");
    }
    Ok(hv)
}

fn eval_hstar(h: &HStarVector, n: u64) -> Rational {
    let d = h.d as u64;
    h.h.iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (j, hj)| {
            acc + hj * Rational::from_integer(big_binom(n + d - j as u64, d).into())
        })
}

pub fn hstar_to_power(h: &HStarVector) -> Poly {
    let d = h.d;
    h.h.iter()
        .enumerate()
        .filter(|(_, hj)| !hj.is_zero())
        .fold(Poly::zero(), |acc, (j, hj)| {
            &acc + &binom_linear(1, (d - j) as i64, d).scale(hj)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn power_to_magic_examples() {
        let m = power_to_magic(&Poly::from_ints(&[1, 2]), 1).unwrap();
        assert_eq!(m.a, ints(&[1, 1]));

        let st2 = Poly::from_coeffs(vec![int(1), rat(7, 2), rat(7, 2)]);
        assert_eq!(
            power_to_magic(&st2, 2).unwrap().a,
            vec![int(1), rat(3, 2), int(1)]
        );

        for d in 1..8usize {
            let n = Poly::var();
            let n1 = Poly::from_ints(&[1, 1]);
            let p = &n1.pow(d as u32) + &n.pow(d as u32);
            let mut want = vec![int(0); d + 1];
            want[0] = int(1);
            want[d] = int(1);
            assert_eq!(power_to_magic(&p, d).unwrap().a, want);
        }
    }

    #[test]
    fn power_to_magic_rejects_high_degree() {
        assert_eq!(
            power_to_magic(&Poly::from_ints(&[1, 2, 3]), 1),
            Err(Error::DegreeTooHigh {
                degree: 2,
                ambient: 1
            })
        );
    }

    #[test]
    fn degenerate_degree_is_allowed() {
        let m = power_to_magic(&Poly::one(), 3).unwrap();
        assert_eq!(m.d, 3);
        assert_eq!(magic_to_power(&m), Poly::one());
        let zero = power_to_magic(&Poly::zero(), 2).unwrap();
        assert_eq!(zero.a, ints(&[0, 0, 0]));
    }

    #[test]
    fn magic_to_power_examples() {
        assert_eq!(
            magic_to_power(&MagicForm::new(ints(&[1, 1]))),
            Poly::from_ints(&[1, 2])
        );
        assert_eq!(
            magic_to_power(&MagicForm::new(ints(&[1, 2, 2, 1]))),
            Poly::from_ints(&[1, 5, 9, 6])
        );
        assert_eq!(
            magic_to_power(&MagicForm::new(ints(&[1, 2, 1]))),
            Poly::from_ints(&[1, 4, 4])
        );
    }

    #[test]
    fn verdicts() {
        let m = MagicForm::new(vec![int(1), rat(-1, 3), int(2), rat(-1, 3), int(1)]);
        let v = is_magic_positive(&m);
        assert!(!v.is_positive());
        let idx: Vec<_> = v.witnesses().iter().map(|w| w.index).collect();
        assert_eq!(idx, vec![1, 3]);
        assert_eq!(v.witnesses()[0].value, rat(-1, 3));
        assert!(is_palindromic(&m));
        assert!(!is_palindromic(&MagicForm::new(ints(&[1, 2]))));
        assert!(is_magic_positive(&MagicForm::new(ints(&[1, 0, 1]))).is_positive());
    }

    #[test]
    fn hstar_examples() {
        assert_eq!(
            power_to_hstar(&Poly::from_ints(&[1, 2]), 1).unwrap().h,
            ints(&[1, 1])
        );
        assert_eq!(
            power_to_hstar(&Poly::from_ints(&[1, 4, 4]), 2).unwrap().h,
            ints(&[1, 6, 1])
        );
        assert_eq!(power_to_hstar(&Poly::one(), 0).unwrap().h, ints(&[1]));
        assert!(power_to_hstar(&Poly::from_ints(&[0, 0, 1]), 1).is_err());

        assert_eq!(
            hstar_to_power(&HStarVector::new(ints(&[1, 1]))),
            Poly::from_ints(&[1, 2])
        );
        assert_eq!(
            hstar_to_power(&HStarVector::new(ints(&[1, 6, 1]))),
            Poly::from_ints(&[1, 4, 4])
        );
        assert_eq!(
            hstar_to_power(&HStarVector::new(ints(&[1, 0]))),
            Poly::from_ints(&[1, 1])
        );
    }

    #[test]
    fn json_records() {
        let m = MagicForm::new(vec![int(1), rat(3, 2), int(1)]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"d":2,"coefficients":["1","3/2","1"]}"#);
        assert_eq!(serde_json::from_str::<MagicForm>(&s).unwrap(), m);
        let v = is_magic_positive(&MagicForm::new(vec![int(1), rat(-2, 3), int(1)]));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"verdict":"negative","witnesses":[{"index":1,"value":"-2/3"}]}"#
        );
    }
}
