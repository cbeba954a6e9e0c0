//! Character tables by simultaneous diagonalisation of the class matrices
//! over a prime field, followed by an exact lift through power maps.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{inner_product_sum, lcm_conductor, ClassFunction, ReptheoryError, MAX_TABLE_CLASSES};
use crate::habiro::{CyclotomicInteger, IntPolynomial};
use crate::permgroup::ConjugacyClasses;

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p = 1 (mod exponent)` with `p > 2 sqrt(order)`.
pub fn dixon_prime(order: u64, exponent: u64) -> u64 {
    let mut p = exponent + 1;
    while !(is_prime(p) && (p as u128) * (p as u128) > 4 * order as u128) {
        p += exponent;
    }
    p
}

/// A primitive `e`-th root of unity modulo `p`, given `e | p - 1`.
fn primitive_root_of_unity(e: u64, p: u64) -> u64 {
    let n = p - 1;
    let factors: Vec<u64> = {
        let (mut m, mut f, mut d) = (n, Vec::new(), 2);
        while d * d <= m {
            if m % d == 0 {
                f.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            f.push(m);
        }
        f
    };
    let generator = (2..p)
        .find(|&g| factors.iter().all(|&f| pow(g, n / f, p) != 1))
        .expect("multiplicative group of a prime field is cyclic");
    pow(generator, n / e, p)
}

/// Row-reduced basis of a subspace of `F_p^n`, with pivot columns.
#[derive(Clone)]
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn row_reduce(mut rows: Vec<Vec<u64>>, p: u64) -> Subspace {
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let s = inv(rows[r][c], p);
        rows[r].iter_mut().for_each(|x| *x = mul(*x, s, p));
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for col in 0..n {
                    let sub = mul(f, rows[r][col], p);
                    rows[k][col] = (rows[k][col] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Subspace { rows, pivots }
}

/// Kernel of a square matrix over `F_p`, as column vectors.
fn kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let reduced = row_reduce(m.to_vec(), p);
    let free: Vec<usize> = (0..n).filter(|c| !reduced.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (row, &pc) in reduced.rows.iter().zip(&reduced.pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// `c[j][i][k] = #{x in C_i : x^-1 z_k in C_j}` reduced mod `p`.
fn class_matrices(classes: &ConjugacyClasses, p: u64) -> Vec<Vec<Vec<u64>>> {
    let r = classes.len();
    let mut c = vec![vec![vec![0u64; r]; r]; r];
    let reps = classes.representatives();
    for (x, i) in classes.elements() {
        let xinv = x.inverse();
        for (k, z) in reps.iter().enumerate() {
            let j = classes
                .class_of(&xinv.compose(z))
                .expect("group is closed under multiplication");
            c[j][i][k] += 1;
        }
    }
    for m in c.iter_mut().flatten().flatten() {
        *m %= p;
    }
    c
}

/// Splits `F_p^r` into common eigenlines of the class matrices.
fn common_eigenlines(
    mats: &[Vec<Vec<u64>>],
    r: usize,
    p: u64,
) -> Result<Vec<Vec<u64>>, ReptheoryError> {
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect();
    let mut spaces = vec![row_reduce(identity, p)];
    for a in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.rows.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            let m = space.rows.len();
            if m == 1 {
                next.push(space);
                continue;
            }
            // b[t][s] = coordinate t of A w_s in the basis of the subspace
            let images: Vec<Vec<u64>> = space
                .rows
                .iter()
                .map(|w| {
                    (0..r)
                        .map(|i| (0..r).fold(0, |acc, k| (acc + mul(a[i][k], w[k], p)) % p))
                        .collect()
                })
                .collect();
            let b: Vec<Vec<u64>> = (0..m)
                .map(|t| (0..m).map(|s| images[s][space.pivots[t]]).collect())
                .collect();
            let mut found = 0;
            let mut pieces = Vec::new();
            for lambda in 0..p {
                if found == m {
                    break;
                }
                let shifted: Vec<Vec<u64>> = (0..m)
                    .map(|t| {
                        (0..m)
                            .map(|s| {
                                if s == t {
                                    (b[t][s] + p - lambda) % p
                                } else {
                                    b[t][s]
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ker = kernel(&shifted, p);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let vectors: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|y| {
                        (0..r)
                            .map(|col| {
                                (0..m)
                                    .fold(0, |acc, s| (acc + mul(y[s], space.rows[s][col], p)) % p)
                            })
                            .collect()
                    })
                    .collect();
                pieces.push(row_reduce(vectors, p));
            }
            if found != m {
                return Err(ReptheoryError::LiftFailure(
                    "class matrix is not diagonalisable over the chosen prime field".into(),
                ));
            }
            next.extend(pieces);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.rows.len() != 1) {
        return Err(ReptheoryError::LiftFailure(
            "class matrices do not separate the irreducible characters".into(),
        ));
    }
    Ok(spaces
        .into_iter()
        .map(|s| s.rows.into_iter().next().unwrap())
        .collect())
}

pub(super) struct DixonOutput {
    pub prime: u64,
    pub irreducibles: Vec<ClassFunction>,
    pub degrees: Vec<u64>,
}

pub(super) fn compute(classes: &ConjugacyClasses) -> Result<DixonOutput, ReptheoryError> {
    let r = classes.len();
    if r > MAX_TABLE_CLASSES {
        return Err(ReptheoryError::SizeBoundExceeded(format!(
            "{r} classes exceed the character-table limit of {MAX_TABLE_CLASSES}"
        )));
    }
    let order = classes.group_order();
    let exponent = classes.exponent();
    let p = dixon_prime(order, exponent);
    let sizes = classes.sizes();
    let inverse = classes.inverse_classes();
    let orders = classes.element_orders();
    assert!(
        classes.representatives()[0].is_identity(),
        "identity class comes first"
    );

    let mats = class_matrices(classes, p);
    let lines = common_eigenlines(&mats, r, p)?;
    let z = primitive_root_of_unity(exponent, p);
    // class of rep_k^s for s < order(rep_k)
    let power_classes: Vec<Vec<usize>> = classes
        .representatives()
        .iter()
        .zip(orders)
        .map(|(g, &o)| {
            (0..o)
                .map(|s| classes.class_of(&g.pow(s)).unwrap())
                .collect()
        })
        .collect();
    let isqrt = (order as f64).sqrt() as u64 + 1;

    let mut table = Vec::with_capacity(r);
    for line in lines {
        if line[0] == 0 {
            return Err(ReptheoryError::LiftFailure(
                "eigenvector vanishes on the identity".into(),
            ));
        }
        let s = inv(line[0], p);
        let omega: Vec<u64> = line.iter().map(|&x| mul(x, s, p)).collect();
        // |G| / chi(1)^2 = sum_k omega_k omega_k' / h_k
        let norm = (0..r).fold(0, |acc, k| {
            (acc + mul(mul(omega[k], omega[inverse[k]], p), inv(sizes[k] % p, p), p)) % p
        });
        if norm == 0 {
            return Err(ReptheoryError::LiftFailure(
                "degenerate central character".into(),
            ));
        }
        let square = mul(order % p, inv(norm, p), p);
        let degree = (1..=isqrt)
            .find(|&d| mul(d, d, p) == square && order.is_multiple_of(d))
            .ok_or_else(|| ReptheoryError::LiftFailure("no admissible character degree".into()))?;
        let modular: Vec<u64> = (0..r)
            .map(|k| mul(mul(omega[k], degree, p), inv(sizes[k] % p, p), p))
            .collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = orders[k];
            let zo = pow(z, exponent / o, p);
            let oinv = inv(o % p, p);
            let mut eigen_mults = Vec::with_capacity(o as usize);
            for l in 0..o {
                let step = inv(pow(zo, l, p), p);
                let sum = (0..o).fold(0, |acc, s| {
                    (acc + mul(modular[power_classes[k][s as usize]], pow(step, s, p), p)) % p
                });
                let m = mul(sum, oinv, p);
                if m > degree {
                    return Err(ReptheoryError::LiftFailure(format!(
                        "eigenvalue multiplicity {m} exceeds degree {degree}"
                    )));
                }
                eigen_mults.push(BigInt::from(m));
            }
            values.push(CyclotomicInteger::new(o, &IntPolynomial::new(eigen_mults)));
        }
        table.push((degree, ClassFunction::new(values)));
    }
    table.sort_by_cached_key(|(d, f)| {
        let key: Vec<Vec<BigInt>> = f.values().iter().map(|v| v.coefficients()).collect();
        (*d, !f.is_trivial(), key)
    });
    let (degrees, irreducibles): (Vec<u64>, Vec<ClassFunction>) = table.into_iter().unzip();
    verify(classes, &irreducibles, &degrees)?;
    Ok(DixonOutput {
        prime: p,
        irreducibles,
        degrees,
    })
}

/// Both orthogonality relations and the degree equation, exactly.
fn verify(
    classes: &ConjugacyClasses,
    irr: &[ClassFunction],
    degrees: &[u64],
) -> Result<(), ReptheoryError> {
    let order = BigInt::from(classes.group_order());
    let r = classes.len();
    if irr.len() != r {
        return Err(ReptheoryError::LiftFailure(format!(
            "{} characters for {r} classes",
            irr.len()
        )));
    }
    let square_sum: u64 = degrees.iter().map(|d| d * d).sum();
    if square_sum != classes.group_order() {
        return Err(ReptheoryError::LiftFailure(format!(
            "sum of squared degrees {square_sum} differs from the group order"
        )));
    }
    for i in 0..r {
        for j in i..r {
            let s = inner_product_sum(classes.sizes(), &irr[i], &irr[j]);
            let expected = if i == j {
                order.clone()
            } else {
                BigInt::from(0)
            };
            if s.as_integer() != Some(expected) {
                return Err(ReptheoryError::LiftFailure(format!(
                    "rows {i} and {j} are not orthonormal"
                )));
            }
        }
    }
    for k in 0..r {
        for l in k..r {
            let conductor =
                lcm_conductor(irr.iter().flat_map(|f| [&f.values()[k], &f.values()[l]]));
            let sum = irr
                .iter()
                .fold(CyclotomicInteger::zero(conductor), |acc, f| {
                    let a = f.values()[k].embed(conductor);
                    let b = f.values()[l].embed(conductor).conj();
                    acc.add(&a.mul(&b))
                });
            let expected = if k == l {
                BigInt::from(classes.centralizer_orders()[k])
            } else {
                BigInt::from(0)
            };
            if sum.as_integer() != Some(expected) {
                return Err(ReptheoryError::LiftFailure(format!(
                    "columns {k} and {l} are not orthogonal"
                )));
            }
        }
    }
    if irr
        .iter()
        .zip(degrees)
        .any(|(f, &d)| f.degree().and_then(|x| x.to_u64()) != Some(d))
    {
        return Err(ReptheoryError::LiftFailure(
            "identity values disagree with degrees".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice() {
        assert_eq!(dixon_prime(6, 6), 7);
        // exponent 1320, 2 sqrt(95040) ~ 616.6
        assert_eq!(dixon_prime(95040, 1320), 1321);
        assert_eq!(dixon_prime(1, 1), 3);
    }

    #[test]
    fn roots_of_unity_mod_p() {
        let z = primitive_root_of_unity(6, 7);
        assert_eq!(pow(z, 6, 7), 1);
        assert!((1..6).all(|k| pow(z, k, 7) != 1));
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let k = kernel(&[vec![1, 2], vec![2, 4]], 7);
        assert_eq!(k, vec![vec![5, 1]]);
    }
}
