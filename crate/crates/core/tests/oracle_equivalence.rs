mod common;

use common::*;
use num_traits::ToPrimitive;
use sortition::oracle::*;
use sortition::stitch::stitch_exact_expected_power;
use sortition::wrs::{counts_per_participant, Count, SubsetCountLayer, WrsWeights};
use sortition::*;

#[test]
fn count_table_matches_enumeration() {
    let mut s = PrngStream::new(11);
    for _ in 0..150 {
        let (iw, cfg) = wrs_instance(&mut s, 10, 4, 30);
        let v = cfg.threshold(iw.total());
        let layer = SubsetCountLayer::build(&iw, cfg.size, v).unwrap();
        let brute = enumerate_subset_counts(&iw, cfg.size, v).unwrap();
        for (t, row) in brute.iter().enumerate() {
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(
                    layer.count(t as u64, k),
                    Count::from(c),
                    "D[{t},{k}] for {:?}",
                    iw.raw()
                );
            }
        }
    }
}

#[test]
fn per_participant_counts_match_enumeration() {
    let mut s = PrngStream::new(12);
    for _ in 0..150 {
        let (iw, cfg) = wrs_instance(&mut s, 12, 4, 50);
        let v = cfg.threshold(iw.total());
        let layer = SubsetCountLayer::build(&iw, cfg.size, v).unwrap();
        let fast = counts_per_participant(&iw, &layer, v).unwrap();
        let brute = enumerate_participant_counts(&iw, cfg.size, v).unwrap();
        let brute: Vec<Count> = brute.into_iter().map(Count::from).collect();
        assert_eq!(fast, brute, "{:?} M={} V={v}", iw.raw(), cfg.size);
    }
}

#[test]
fn one_layer_serves_every_lower_threshold() {
    let mut s = PrngStream::new(13);
    for _ in 0..40 {
        let (iw, cfg) = wrs_instance(&mut s, 10, 3, 20);
        let top = cfg.threshold(iw.total());
        let layer = SubsetCountLayer::build(&iw, cfg.size, top).unwrap();
        for v in 1..=top {
            let fast = counts_per_participant(&iw, &layer, v).unwrap();
            let brute = enumerate_participant_counts(&iw, cfg.size, v).unwrap();
            assert!(fast.iter().zip(&brute).all(|(a, &b)| *a == Count::from(b)));
        }
    }
}

#[test]
fn wrs_law_is_exactly_fair() {
    let mut s = PrngStream::new(14);
    for _ in 0..60 {
        let (iw, cfg) = wrs_instance(&mut s, 9, 4, 20);
        let exact = wrs_expected_power_exact(&iw, &cfg).unwrap();
        assert!(rationals_equal(&exact, &rational_weights(&iw)), "{:?}", iw.raw());
    }
}

#[test]
fn crs_law_is_fair() {
    let mut s = PrngStream::new(15);
    for _ in 0..60 {
        let (w, m) = crs_instance(&mut s, 10);
        let law = enumerate_crs_law(&w, m).unwrap();
        assert!((law.total_probability() - 1.0).abs() < 1e-12);
        assert!(max_abs_diff(&law.expected_power, w.as_slice()) < 1e-9);
    }
}

#[test]
fn rec_law_is_fair_and_tight() {
    let mut s = PrngStream::new(16);
    for _ in 0..80 {
        let (w, m) = rec_instance(&mut s, 12);
        let law = enumerate_rec_law(&w, m).unwrap();
        assert!(max_abs_diff(&law.expected_power, w.as_slice()) < 1e-12);
        let lambda = ElectoralCollege::new(w.clone(), m).unwrap().lambda();
        assert!((law.worst_ratio(&w) * lambda - 1.0).abs() < 1e-12);
    }
}

#[test]
fn stitch_law_is_fair_and_tight() {
    let mut s = PrngStream::new(17);
    for _ in 0..80 {
        let (w, m) = stitch_instance(&mut s, 12);
        let law = stitch_law_by_breakpoints(&w, m).unwrap();
        assert!((law.total_probability() - 1.0).abs() < 1e-12);
        assert!(max_abs_diff(&law.expected_power, w.as_slice()) < 1e-12);
        let fast = stitch_exact_expected_power(&w, m).unwrap();
        assert!(max_abs_diff(&fast, w.as_slice()) < 1e-12);
        let lambda = Stitch::new(w.clone(), StitchConfig::new(m)).unwrap().lambda();
        assert!((law.worst_ratio(&w) * lambda - 1.0).abs() < 1e-12);
    }
}

#[test]
fn crs_worst_ratio_is_lambda() {
    let mut s = PrngStream::new(18);
    for _ in 0..40 {
        let (w, m) = crs_instance(&mut s, 9);
        let law = enumerate_crs_law(&w, m).unwrap();
        let lambda = CumulativeRejection::new(w.clone(), m).unwrap().lambda();
        assert!((law.worst_ratio(&w) * lambda - 1.0).abs() < 1e-12);
    }
}

#[test]
fn wrs_bound_holds_on_the_whole_support() {
    let mut s = PrngStream::new(19);
    for _ in 0..60 {
        let (iw, cfg) = wrs_instance(&mut s, 9, 4, 30);
        let alg = WeightedRejection::new(iw.clone(), cfg).unwrap();
        let law = enumerate_wrs_law(&iw, &cfg).unwrap();
        let bound = alg.lambda_bound();
        assert!(law.worst_ratio(&iw.normalized()) * bound <= 1.0 + 1e-12);
        let exact = wrs_lambda_bound_exact(&iw, &alg.wrs_weights().counts, cfg.size);
        assert!((exact.to_f64().unwrap() - bound).abs() <= 1e-12 * bound);
    }
}

#[test]
fn wrs_fast_weights_match_rational_p() {
    let mut s = PrngStream::new(20);
    for _ in 0..40 {
        let (iw, cfg) = wrs_instance(&mut s, 10, 4, 40);
        let wrs = WrsWeights::new(&iw, &cfg).unwrap();
        let counts = enumerate_participant_counts(&iw, cfg.size, cfg.threshold(iw.total())).unwrap();
        let q: Vec<f64> = iw
            .raw()
            .iter()
            .zip(&counts)
            .map(|(&w, &c)| w as f64 / c as f64)
            .collect();
        let z: f64 = q.iter().sum();
        let p: Vec<f64> = q.iter().map(|x| x / z).collect();
        assert!(max_abs_diff(&wrs.p, &p) < 1e-12);
        assert!((wrs.p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
