use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Lagrange interpolation: the polynomial of degree `< points.len()` through
/// `(x_i, y_i)`, coefficients in ascending degree.
pub fn lagrange(points: &[(BigInt, BigInt)]) -> Vec<BigRational> {
    let n = points.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xj.clone());
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = BigRational::new(yi.clone(), denom);
        for (o, c) in out.iter_mut().zip(basis) {
            *o += c * &scale;
        }
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

pub fn eval_rational(coeffs: &[BigRational], x: &BigInt) -> BigRational {
    let xr = BigRational::from_integer(x.clone());
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * &xr + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_polynomial() {
        // 2x^2 - 3x + 1
        let pts: Vec<(BigInt, BigInt)> = [3i64, 5, 7, 11]
            .iter()
            .map(|&x| (BigInt::from(x), BigInt::from(2 * x * x - 3 * x + 1)))
            .collect();
        let c = lagrange(&pts);
        let want: Vec<BigRational> = [1i64, -3, 2]
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        assert_eq!(c, want);
        assert_eq!(eval_rational(&c, &BigInt::from(13)), BigRational::from_integer(300.into()));
    }
}
