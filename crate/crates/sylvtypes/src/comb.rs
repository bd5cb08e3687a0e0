//! Exact combinatorial number triangles in arbitrary precision.
//!
//! Provides binomial coefficients, Stirling numbers of both kinds, their
//! r-parametrized and type-B variants, Eulerian and type-B Eulerian numbers,
//! and the Euler-Frobenius interpolation between them. All triangles are
//! computed by their defining recurrences over `BigInt`/`BigRational`;
//! closed-form Frobenius-style sums are exposed separately so the two routes
//! can be checked against each other.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// n! as a `BigInt`.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient C(n, k); zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Row `n` of the partition (second-kind) Stirling triangle, indices `0..=n`.
pub fn stirling_second_row(n: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m as usize + 1];
        for k in 0..row.len() {
            // S(m,k) = S(m-1,k-1) + k*S(m-1,k)
            let kk = BigInt::from(k);
            next[k] += &row[k] * kk;
            next[k + 1] += &row[k];
        }
        row = next;
    }
    row
}

/// Partition Stirling number S(n, k); zero outside the triangle.
pub fn stirling_second(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    stirling_second_row(n)[k as usize].clone()
}

/// Row `n` of the unsigned first-kind (cycle) Stirling triangle.
pub fn stirling_first_row(n: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m as usize + 1];
        for k in 0..row.len() {
            // c(m,k) = c(m-1,k-1) + (m-1)*c(m-1,k)
            next[k] += &row[k] * BigInt::from(m - 1);
            next[k + 1] += &row[k];
        }
        row = next;
    }
    row
}

/// Unsigned cycle Stirling number c(n, k); zero outside the triangle.
pub fn stirling_first_unsigned(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    stirling_first_row(n)[k as usize].clone()
}

/// Row `n` of the r-parametrized second-kind Stirling triangle.
///
/// Defined by `S_r(n,k) = S_r(n-1,k-1) + (k+r) S_r(n-1,k)` with
/// `S_r(0,0) = 1`; agrees with the exponential generating function
/// `e^{ry} (e^y - 1)^k / k!`.
pub fn r_stirling_second_row(n: u64, r: &BigRational) -> Vec<BigRational> {
    let mut row = vec![BigRational::one()];
    for m in 1..=n {
        let mut next = vec![BigRational::zero(); m as usize + 1];
        for k in 0..row.len() {
            let weight = BigRational::from(BigInt::from(k)) + r;
            next[k] += &row[k] * weight;
            next[k + 1] += &row[k];
        }
        row = next;
    }
    row
}

/// r-Stirling number of the second kind with rational parameter `r`.
pub fn r_stirling_second(n: u64, k: i64, r: &BigRational) -> BigRational {
    if k < 0 || k as u64 > n {
        return BigRational::zero();
    }
    r_stirling_second_row(n, r)[k as usize].clone()
}

fn two_pow(e: u64) -> BigInt {
    BigInt::one() << e
}

/// Type-B second-kind Stirling number, `2^{n-k} S_{1/2}(n,k)`.
///
/// The scaling is guaranteed to clear the denominators; integrality is
/// asserted rather than assumed.
pub fn b_stirling_second(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let scaled = r_stirling_second(n, k, &half) * BigRational::from(two_pow(n - k as u64));
    assert!(
        scaled.denom().is_one(),
        "b_stirling_second({n},{k}) is not integral"
    );
    scaled.numer().clone()
}

/// Row of type-B first-kind Stirling numbers, the coefficients of
/// `prod_{j=0}^{n-1} (t + 2j + 1)` in increasing degree.
pub fn b_stirling_first_row(n: u64) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::one()];
    for j in 0..n {
        let c = BigInt::from(2 * j + 1);
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (deg, a) in coeffs.iter().enumerate() {
            next[deg] += a * &c;
            next[deg + 1] += a;
        }
        coeffs = next;
    }
    coeffs
}

/// Type-B first-kind Stirling number; zero outside the triangle.
pub fn b_stirling_first(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    b_stirling_first_row(n)[k as usize].clone()
}

/// Row `n >= 1` of the Eulerian triangle, indices `0..=n-1`.
pub fn eulerian_row(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "eulerian_row requires n >= 1");
    let mut row = vec![BigInt::one()];
    for m in 2..=n {
        let mut next = vec![BigInt::zero(); m as usize];
        for k in 0..row.len() {
            // <m,k> = (k+1)<m-1,k> + (m-k)<m-1,k-1>
            next[k] += &row[k] * BigInt::from(k + 1);
            next[k + 1] += &row[k] * BigInt::from(m - 1 - k as u64);
        }
        row = next;
    }
    row
}

/// Eulerian number `<n, k>`: permutations of n elements with k ascents.
pub fn eulerian(n: u64, k: i64) -> BigInt {
    assert!(n >= 1, "eulerian requires n >= 1");
    if k < 0 || k as u64 > n - 1 {
        return BigInt::zero();
    }
    eulerian_row(n)[k as usize].clone()
}

/// Euler-Frobenius number `A_{n,k,rho}`, computed from the generalized
/// Frobenius sum over r-Stirling numbers with `r = 1 - rho`.
pub fn euler_frobenius(n: u64, k: i64, rho: &BigRational) -> BigRational {
    if k < 0 || k as u64 > n {
        return BigRational::zero();
    }
    let r = BigRational::one() - rho;
    let srow = r_stirling_second_row(n, &r);
    let mut acc = BigRational::zero();
    let mut jfact = BigInt::one();
    for j in 0..=n {
        if j > 0 {
            jfact *= BigInt::from(j);
        }
        let c = binomial(n - j, k);
        if c.is_zero() {
            continue;
        }
        let term = &srow[j as usize] * BigRational::from(c * &jfact);
        if (n + j + k as u64).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Type-B Eulerian number `B<n, k> = 2^n A_{n,k,1/2}`; counts signed
/// permutations of n elements by type-B ascents.
pub fn b_eulerian(n: u64, k: i64) -> BigInt {
    assert!(n >= 1, "b_eulerian requires n >= 1");
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let scaled = euler_frobenius(n, k, &half) * BigRational::from(two_pow(n));
    assert!(scaled.denom().is_one(), "b_eulerian({n},{k}) is not integral");
    assert!(!scaled.is_negative(), "b_eulerian({n},{k}) is negative");
    scaled.numer().clone()
}

/// Row `n >= 1` of the type-B Eulerian triangle, indices `0..=n`.
pub fn b_eulerian_row(n: u64) -> Vec<BigInt> {
    (0..=n as i64).map(|k| b_eulerian(n, k)).collect()
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)] // explicit indices mirror the triangle notation
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    // --- brute-force oracles ---

    /// Pascal-recurrence binomial, independent of the multiplicative formula.
    fn binomial_pascal(n: usize, k: usize) -> u64 {
        let mut row = vec![1u64];
        for _ in 0..n {
            let mut next = vec![1u64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        if k < row.len() {
            row[k]
        } else {
            0
        }
    }

    /// Number of set partitions of {0..n-1} into exactly k nonempty blocks,
    /// by explicit enumeration of restricted growth strings.
    fn set_partitions(n: usize, k: usize) -> u64 {
        fn rec(labels: &mut Vec<usize>, n: usize, k: usize) -> u64 {
            if labels.len() == n {
                let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
                return (blocks == k) as u64;
            }
            let next_free = labels.iter().copied().max().map_or(0, |m| m + 1);
            let mut total = 0;
            for b in 0..=next_free.min(k - 1) {
                labels.push(b);
                total += rec(labels, n, k);
                labels.pop();
            }
            total
        }
        if k == 0 {
            return (n == 0) as u64;
        }
        rec(&mut Vec::new(), n, k)
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn heap(perm: &mut Vec<usize>, size: usize, out: &mut Vec<Vec<usize>>) {
            if size == 1 {
                out.push(perm.clone());
                return;
            }
            for i in 0..size {
                heap(perm, size - 1, out);
                if size.is_multiple_of(2) {
                    perm.swap(i, size - 1);
                } else {
                    perm.swap(0, size - 1);
                }
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        heap(&mut perm, n, &mut out);
        out
    }

    fn cycle_count(perm: &[usize]) -> usize {
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }

    fn ascent_count(perm: &[usize]) -> usize {
        perm.windows(2).filter(|w| w[0] < w[1]).count()
    }

    /// Type-B descent count of a signed permutation in window notation:
    /// a descent at 0 when w(1) < 0, and at i >= 1 when w(i) > w(i+1).
    fn b_descent_count(signed: &[i64]) -> usize {
        let mut desc = 0;
        if signed[0] < 0 {
            desc += 1;
        }
        desc + signed.windows(2).filter(|w| w[0] > w[1]).count()
    }

    fn signed_permutations(n: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for perm in permutations(n) {
            for mask in 0..(1u32 << n) {
                let signed: Vec<i64> = perm
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let v = v as i64 + 1;
                        if mask & (1 << i) != 0 {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect();
                out.push(signed);
            }
        }
        out
    }

    // --- binomial ---

    #[test]
    fn binomial_small_cases() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(9, 5), big(binomial_pascal(9, 5) as i64));
        assert_eq!(binomial_pascal(9, 5), 126);
        for n in 0..12u64 {
            assert_eq!(binomial(n, 0), big(1));
            assert_eq!(binomial(n, -1), big(0));
            assert_eq!(binomial(n, n as i64 + 1), big(0));
        }
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        for n in 0..=12usize {
            for k in 0..=n {
                assert_eq!(
                    binomial(n as u64, k as i64).to_u64().unwrap(),
                    binomial_pascal(n, k)
                );
            }
        }
    }

    // --- Stirling numbers ---

    #[test]
    fn stirling_second_against_partition_enumeration() {
        assert_eq!(set_partitions(4, 2), 7);
        for n in 0..=8usize {
            for k in 0..=n {
                assert_eq!(
                    stirling_second(n as u64, k as i64).to_u64().unwrap(),
                    set_partitions(n, k),
                    "S({n},{k})"
                );
            }
        }
    }

    #[test]
    fn stirling_second_edges() {
        for n in 1..=12u64 {
            assert_eq!(stirling_second(n, n as i64), big(1));
            assert_eq!(stirling_second(n, 0), big(0));
        }
        assert_eq!(stirling_second(0, 0), big(1));
    }

    #[test]
    fn stirling_first_against_cycle_enumeration() {
        for n in 1..=6usize {
            let mut counts = vec![0u64; n + 1];
            for p in permutations(n) {
                counts[cycle_count(&p)] += 1;
            }
            for k in 0..=n {
                assert_eq!(
                    stirling_first_unsigned(n as u64, k as i64).to_u64().unwrap(),
                    counts[k],
                    "c({n},{k})"
                );
            }
        }
        assert_eq!(stirling_first_unsigned(4, 2), big(11));
    }

    #[test]
    fn stirling_first_row_sums_to_factorial() {
        for n in 1..=10u64 {
            let sum: BigInt = stirling_first_row(n).into_iter().sum();
            assert_eq!(sum, factorial(n));
        }
    }

    // --- r-Stirling ---

    #[test]
    fn r_stirling_reduces_to_plain_at_zero() {
        let zero = BigRational::zero();
        for n in 0..=12u64 {
            for k in 0..=n as i64 {
                assert_eq!(
                    r_stirling_second(n, k, &zero),
                    BigRational::from(stirling_second(n, k))
                );
            }
        }
    }

    #[test]
    fn r_stirling_at_one_shifts_the_triangle() {
        let one = BigRational::one();
        for n in 0..=12u64 {
            for k in 0..=n as i64 {
                assert_eq!(
                    r_stirling_second(n, k, &one),
                    BigRational::from(stirling_second(n + 1, k + 1))
                );
            }
        }
    }

    #[test]
    fn r_stirling_half_row_two_from_generating_function() {
        // Expanding e^{y/2} (e^y - 1)^k / k! to order y^2 by hand gives
        // S_{1/2}(2,.) = (1/4, 2, 1).
        let half = rat(1, 2);
        assert_eq!(r_stirling_second(2, 0, &half), rat(1, 4));
        assert_eq!(r_stirling_second(2, 1, &half), rat(2, 1));
        assert_eq!(r_stirling_second(2, 2, &half), rat(1, 1));
    }

    // --- type-B Stirling ---

    #[test]
    fn b_stirling_second_row_two() {
        let row: Vec<BigInt> = (0..=2).map(|k| b_stirling_second(2, k)).collect();
        assert_eq!(row, vec![big(1), big(4), big(1)]);
    }

    #[test]
    fn b_stirling_first_leading_coefficient_is_one() {
        for n in 0..=12u64 {
            assert_eq!(b_stirling_first(n, n as i64), big(1));
        }
    }

    #[test]
    fn b_stirling_row_three_values() {
        let row: Vec<BigInt> = (0..=3).map(|k| b_stirling_second(3, k)).collect();
        assert_eq!(row, vec![big(1), big(13), big(9), big(1)]);
        assert_eq!(b_stirling_first_row(2), vec![big(3), big(4), big(1)]);
    }

    // --- Eulerian numbers ---

    #[test]
    fn eulerian_against_ascent_enumeration() {
        for n in 1..=6usize {
            let mut counts = vec![0u64; n];
            for p in permutations(n) {
                counts[ascent_count(&p)] += 1;
            }
            for k in 0..n {
                assert_eq!(
                    eulerian(n as u64, k as i64).to_u64().unwrap(),
                    counts[k],
                    "<{n},{k}>"
                );
            }
        }
        assert_eq!(eulerian_row(4), vec![big(1), big(11), big(11), big(1)]);
    }

    #[test]
    fn eulerian_row_sum_and_symmetry() {
        for n in 1..=20u64 {
            let row = eulerian_row(n);
            let sum: BigInt = row.iter().cloned().sum();
            assert_eq!(sum, factorial(n));
            for k in 0..row.len() {
                assert_eq!(row[k], row[row.len() - 1 - k]);
            }
        }
    }

    #[test]
    fn b_eulerian_against_signed_descent_enumeration() {
        for n in 1..=4usize {
            let mut counts = vec![0u64; n + 1];
            for sp in signed_permutations(n) {
                counts[b_descent_count(&sp)] += 1;
            }
            for k in 0..=n {
                assert_eq!(
                    b_eulerian(n as u64, k as i64).to_u64().unwrap(),
                    counts[k],
                    "B<{n},{k}>"
                );
            }
        }
        assert_eq!(
            b_eulerian_row(4),
            vec![big(1), big(76), big(230), big(76), big(1)]
        );
    }

    #[test]
    fn b_eulerian_row_sum_and_symmetry() {
        for n in 1..=15u64 {
            let row = b_eulerian_row(n);
            let sum: BigInt = row.iter().cloned().sum();
            assert_eq!(sum, two_pow(n) * factorial(n));
            for k in 0..row.len() {
                assert_eq!(row[k], row[row.len() - 1 - k]);
            }
        }
    }

    // --- Euler-Frobenius ---

    #[test]
    fn euler_frobenius_specializes_to_eulerian() {
        let one = BigRational::one();
        let zero = BigRational::zero();
        for n in 1..=12u64 {
            for k in 0..n as i64 {
                let target = BigRational::from(eulerian(n, k));
                assert_eq!(euler_frobenius(n, k, &one), target);
                assert_eq!(euler_frobenius(n, k + 1, &zero), target);
            }
        }
    }

    #[test]
    fn euler_frobenius_parameter_symmetry() {
        for rho in [rat(0, 1), rat(1, 3), rat(1, 2)] {
            let mirror = BigRational::one() - &rho;
            for n in 0..=10u64 {
                for k in 0..=n as i64 {
                    assert_eq!(
                        euler_frobenius(n, k, &rho),
                        euler_frobenius(n, n as i64 - k, &mirror),
                        "A(n={n},k={k},rho={rho})"
                    );
                }
            }
        }
    }

    #[test]
    fn euler_frobenius_row_sums_to_factorial() {
        for rho in [rat(1, 2), rat(1, 3), rat(2, 7)] {
            for n in 0..=8u64 {
                let sum: BigRational = (0..=n as i64)
                    .map(|k| euler_frobenius(n, k, &rho))
                    .sum();
                assert_eq!(sum, BigRational::from(factorial(n)));
            }
        }
    }
}
