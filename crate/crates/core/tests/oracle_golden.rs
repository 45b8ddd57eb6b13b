use sylow3::closed_form::prime_power_explicit;
use sylow3::oracle::omega_oracle;
use sylow3::sylow::{BinarySeq, CharLabel};

fn check(k: u32) {
    for s in BinarySeq::all(k) {
        let listed = prime_power_explicit(&s).unwrap().enumerate().unwrap();
        let computed = omega_oracle(&CharLabel::single(s.clone())).unwrap();
        assert_eq!(listed, computed, "Ω({s})");
    }
}

#[test]
fn lists_up_to_length_two() {
    check(1);
    check(2);
}

#[test]
fn lists_of_length_three() {
    check(3);
}
