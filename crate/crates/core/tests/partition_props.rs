use tauforge::partitions::{enumerate, enumerate_up_to, Partition};

/// Partition counts from Euler's pentagonal recurrence.
fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n as i64 {
        let mut acc = 0i64;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[(m - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[(m - g2) as usize];
            }
        }
        p[m as usize] = acc;
    }
    p.into_iter().map(|x| x as u64).collect()
}

#[test]
fn counts_match_pentagonal_recurrence() {
    let counts = partition_counts(20);
    for d in 0..=20u32 {
        assert_eq!(enumerate(d).len() as u64, counts[d as usize], "d = {d}");
    }
}

#[test]
fn kappa_flips_under_conjugation() {
    for mu in enumerate_up_to(10) {
        assert_eq!(mu.conjugate().kappa(), -mu.kappa(), "{mu}");
        assert_eq!(mu.conjugate().conjugate(), mu);
    }
}

#[test]
fn kappa_from_maya_positions() {
    for mu in enumerate_up_to(10) {
        // twice sum_i [(mu_i - i + 1/2)^2 - (-i + 1/2)^2], in integers
        let twice: i64 = (1..=mu.len() as i64)
            .map(|i| {
                let a = 2 * (mu.part(i as usize) as i64 - i) + 1;
                let b = -2 * i + 1;
                (a * a - b * b) / 4
            })
            .sum();
        assert_eq!(twice, mu.kappa(), "{mu}");
        let contents: i64 = mu.hooks_and_contents().iter().map(|c| c.content).sum();
        assert_eq!(2 * contents, mu.kappa());
    }
}

#[test]
fn class_sizes_sum_to_factorial() {
    let mut fact: u128 = 1;
    for d in 0..=8u32 {
        if d > 0 {
            fact *= d as u128;
        }
        let total: u128 = enumerate(d).iter().map(|mu| fact / mu.z()).sum();
        assert_eq!(total, fact, "d = {d}");
    }
}

#[test]
fn strip_removal_inverts_addition() {
    for mu in enumerate_up_to(6) {
        for k in 1..=4 {
            for (lam, h) in mu.add_border_strips(k) {
                assert_eq!(lam.size(), mu.size() + k);
                assert!(lam.border_strips(k).contains(&(mu.clone(), h)), "{mu} + {k} -> {lam}");
            }
        }
    }
}

#[test]
fn hook_lengths_give_dimension() {
    // d! / prod hooks summed in squares over |mu| = d is d!
    for d in 1..=7u32 {
        let fact: u128 = (1..=d as u128).product();
        let total: u128 = enumerate(d)
            .iter()
            .map(|mu: &Partition| {
                let prod: u128 = mu.hooks_and_contents().iter().map(|c| c.hook as u128).product();
                let f = fact / prod;
                f * f
            })
            .sum();
        assert_eq!(total, fact);
    }
}
