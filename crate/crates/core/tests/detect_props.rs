use std::path::PathBuf;

use skewlines::canon::is_amphicheiral;
use skewlines::detect::{detect, detect_with, verify_found, DetectOptions, DetectResult};
use skewlines::enumerate::{switching_class_keys, EnumOptions};
use skewlines::{canon, LinkMatrix};

fn fixture(name: &str) -> LinkMatrix {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    std::fs::read_to_string(p).unwrap().parse().unwrap()
}

#[test]
fn lookahead_changes_cost_not_verdict() {
    let opts = EnumOptions::default();
    let plain = DetectOptions {
        lookahead: false,
        node_limit: None,
    };
    for n in 1..=7 {
        for k in switching_class_keys(n, &opts).unwrap() {
            let x = k.matrix();
            let fast = detect_with(&x, &DetectOptions::default()).unwrap();
            let slow = detect_with(&x, &plain).unwrap();
            assert_eq!(fast.result.is_found(), slow.result.is_found(), "{k}");
            assert!(fast.nodes <= slow.nodes, "{k}");
            if fast.result.is_found() {
                assert!(verify_found(&x, &fast.result));
                assert!(verify_found(&x, &slow.result));
            }
        }
    }
}

#[test]
fn node_limit_aborts() {
    let x = fixture("nonspindle6.txt");
    let tight = DetectOptions {
        lookahead: false,
        node_limit: Some(1),
    };
    assert!(detect_with(&x, &tight).is_err());
}

#[test]
fn mirror_pair_class_has_no_spindle() {
    let x = fixture("nonspindle6.txt");
    assert_eq!(detect(&x), DetectResult::NoSpindle);
    assert!(is_amphicheiral(&x));
    assert_eq!(canon(&x).to_hex(), "06f9d8");
}

#[test]
fn small_orders_are_all_spindles() {
    let opts = EnumOptions::default();
    for n in 1..=5 {
        for k in switching_class_keys(n, &opts).unwrap() {
            assert!(detect(&k.matrix()).is_found(), "{k}");
        }
    }
}
