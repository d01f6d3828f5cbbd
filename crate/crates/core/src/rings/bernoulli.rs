use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`, from `sum_k C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // binomial row C(m+1, k)
        let mut c = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(c.clone());
            c = c * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// The Bernoulli number `B_j` (`B_2 = 1/6`, `B_4 = -1/30`, ...).
pub fn bernoulli(j: usize) -> BigRational {
    bernoulli_numbers(j).pop().expect("nonempty")
}
