use hocauchy_core::stirling::{
    binomial, compositions, factorial, multinomial, stirling1_signed, stirling1_unsigned, stirling2,
};
use num_bigint::BigInt;

#[test]
fn stirling_orthogonality() {
    for n in 0..=15usize {
        for m in 0..=15usize {
            let s: BigInt = (0..=15usize).map(|l| stirling1_signed(n, l) * stirling2(l, m)).sum();
            let t: BigInt = (0..=15usize).map(|l| stirling2(n, l) * stirling1_signed(l, m)).sum();
            let delta = BigInt::from((n == m) as i32);
            assert_eq!(s, delta, "({n},{m})");
            assert_eq!(t, delta, "({n},{m})");
        }
    }
}

#[test]
fn unsigned_row_sums_are_factorials() {
    for n in 0..=15usize {
        let sum: BigInt = (0..=n).map(|l| stirling1_unsigned(n, l)).sum();
        assert_eq!(sum, factorial(n));
    }
}

#[test]
fn compositions_enumerate_all() {
    for total in 0..=8usize {
        for parts in 1..=4usize {
            let all: Vec<Vec<usize>> = compositions(total, parts).collect();
            assert_eq!(BigInt::from(all.len()), binomial(total + parts - 1, parts - 1));
            assert!(all.windows(2).all(|w| w[0] < w[1]), "lexicographic");
            assert!(all.iter().all(|c| c.len() == parts && c.iter().sum::<usize>() == total));
            // multinomial theorem: sum over compositions = parts^total
            let s: BigInt = all.iter().map(|c| multinomial(total, c).unwrap()).sum();
            assert_eq!(s, BigInt::from(parts).pow(total as u32));
        }
    }
}

#[test]
fn multinomial_rejects_bad_parts() {
    assert!(multinomial(5, &[2, 2]).is_err());
    assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), BigInt::from(12));
}
