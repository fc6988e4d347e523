use proptest::prelude::*;
use skelaug::mi::{entropy, joint_entropy, mutual_information, sequence_mi, QuantizationConfig};
use skelaug::{Frame, Schema, SkeletonSequence};

/// Probability tables built by counting over a dense alphabet, and MI from
/// `Σ p(a,b) log₂(p(a,b) / (p(a) p(b)))` rather than from entropies.
struct Oracle {
    h_a: f64,
    h_b: f64,
    h_ab: f64,
    mi: f64,
}

fn oracle(a: &[usize], b: &[usize], k: usize) -> Oracle {
    let n = a.len() as f64;
    let mut pa = vec![0.0; k];
    let mut pb = vec![0.0; k];
    let mut pab = vec![vec![0.0; k]; k];
    for (&x, &y) in a.iter().zip(b) {
        pa[x] += 1.0 / n;
        pb[y] += 1.0 / n;
        pab[x][y] += 1.0 / n;
    }
    let h = |p: &[f64]| -p.iter().filter(|&&v| v > 0.0).map(|&v| v * v.log2()).sum::<f64>();
    let flat: Vec<f64> = pab.iter().flatten().copied().collect();
    let mut mi = 0.0;
    for x in 0..k {
        for y in 0..k {
            if pab[x][y] > 0.0 {
                mi += pab[x][y] * (pab[x][y] / (pa[x] * pb[y])).log2();
            }
        }
    }
    Oracle {
        h_a: h(&pa),
        h_b: h(&pb),
        h_ab: h(&flat),
        mi,
    }
}

fn streams() -> impl Strategy<Value = (Vec<usize>, Vec<usize>, usize)> {
    (1usize..=8, 1usize..=32).prop_flat_map(|(k, n)| {
        (
            prop::collection::vec(0..k, n),
            prop::collection::vec(0..k, n),
            Just(k),
        )
    })
}

proptest! {
    #[test]
    fn matches_probability_table_oracle((a, b, k) in streams()) {
        let o = oracle(&a, &b, k);
        let r = mutual_information(&a, &b).unwrap();
        prop_assert!((r.entropy_a - o.h_a).abs() < 1e-12);
        prop_assert!((r.entropy_b - o.h_b).abs() < 1e-12);
        prop_assert!((r.joint_entropy - o.h_ab).abs() < 1e-12);
        prop_assert!((r.mi - o.mi).abs() < 1e-12);
    }

    #[test]
    fn symmetric_and_non_negative((a, b, _k) in streams()) {
        let ab = mutual_information(&a, &b).unwrap().mi;
        let ba = mutual_information(&b, &a).unwrap().mi;
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!(ab >= -1e-12);
    }

    #[test]
    fn self_information_is_entropy((a, _b, _k) in streams()) {
        prop_assert_eq!(mutual_information(&a, &a).unwrap().mi, entropy(&a).unwrap());
    }

    #[test]
    fn relabeling_is_exactly_invariant((a, b, k) in streams(), perm_seed in any::<u64>()) {
        // a bijection on 0..k: rotate by an offset and reverse on odd seeds
        let offset = (perm_seed % k as u64) as usize;
        let relabel = |x: usize| {
            let y = (x + offset) % k;
            if perm_seed % 2 == 1 { k - 1 - y } else { y }
        };
        let a2: Vec<usize> = a.iter().map(|&x| relabel(x)).collect();
        let b2: Vec<usize> = b.iter().map(|&x| relabel(x) * 7 + 100).collect();
        let before = mutual_information(&a, &b).unwrap();
        let after = mutual_information(&a2, &b2).unwrap();
        prop_assert_eq!(before.mi, after.mi);
        prop_assert_eq!(before.joint_entropy, after.joint_entropy);
    }
}

#[test]
fn joint_entropy_rejects_unequal_lengths() {
    assert!(joint_entropy(&[1, 2], &[1]).is_err());
}

#[test]
fn two_bins_bound_sequence_mi() {
    let frames = (0..20)
        .map(|t| Frame {
            timestamp: t as f64,
            positions: (0..17).map(|j| [(t * j) as f64 % 7.0, j as f64, -(t as f64)]).collect(),
        })
        .collect();
    let raw = SkeletonSequence::new(Schema::Simplified17, 30.0, frames);
    let mut aug = raw.clone();
    for f in &mut aug.frames {
        for p in &mut f.positions {
            p[0] *= 0.5;
        }
    }
    let r = sequence_mi(&raw, &aug, &QuantizationConfig { bins: 2 }).unwrap();
    assert!(r.mi <= 1.0 + 1e-12);
    assert_eq!(r.sample_count, 20 * 17 * 3);
}
