//! Madelung shell filling.

use alloc::vec::Vec;

/// Shells `(n, l, occ)` filled in `(n+l, n)` order; the last shell may be
/// fractional under spherical averaging. Occupations sum to `n_electrons`.
pub fn aufbau_configuration(n_electrons: u32) -> Vec<(u32, u32, f64)> {
    let mut order: Vec<(u32, u32)> = Vec::new();
    for n in 1..=12u32 {
        for l in 0..n {
            order.push((n, l));
        }
    }
    order.sort_by_key(|&(n, l)| (n + l, n));
    let mut left = n_electrons as f64;
    let mut out = Vec::new();
    for (n, l) in order {
        if left <= 0.0 {
            break;
        }
        let cap = (2 * (2 * l + 1)) as f64;
        let occ = cap.min(left);
        out.push((n, l, occ));
        left -= occ;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hydrogen_and_neon() {
        assert_eq!(aufbau_configuration(1), alloc::vec![(1, 0, 1.0)]);
        assert_eq!(
            aufbau_configuration(10),
            alloc::vec![(1, 0, 2.0), (2, 0, 2.0), (2, 1, 6.0)]
        );
    }

    #[test]
    fn nitrogen_has_a_partial_p_shell() {
        assert_eq!(
            aufbau_configuration(7),
            alloc::vec![(1, 0, 2.0), (2, 0, 2.0), (2, 1, 3.0)]
        );
    }

    #[test]
    fn madelung_order_beyond_argon() {
        // 4s fills before 3d
        let k = aufbau_configuration(20);
        assert_eq!(k.last().unwrap(), &(4, 0, 2.0));
        let sc = aufbau_configuration(21);
        assert_eq!(sc.last().unwrap(), &(3, 2, 1.0));
    }

    #[test]
    fn occupations_sum_to_n() {
        for n in [1u32, 7, 29, 54, 86, 118] {
            let total: f64 = aufbau_configuration(n).iter().map(|s| s.2).sum();
            assert_eq!(total, n as f64);
        }
    }
}
