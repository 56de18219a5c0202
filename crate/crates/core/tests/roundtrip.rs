use motzeta::curve::{builtin, CurveSing, BUILTIN_NAMES};
use motzeta::qseries::TwoVarClass;
use motzeta::{MotClass, MotSeries};

#[test]
fn curves_round_trip_through_json() {
    for name in BUILTIN_NAMES {
        let c = builtin(name).unwrap();
        let back = CurveSing::from_json_str(&c.to_json().to_string()).unwrap();
        assert_eq!(c.poincare_gel(6).unwrap(), back.poincare_gel(6).unwrap(), "{name}");
    }
}

#[test]
fn series_round_trip_through_json() {
    let s = builtin("cusp25").unwrap().poincare_gel(7).unwrap();
    let text = serde_json::to_string(&s.to_json()).unwrap();
    let back = MotSeries::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(s, back);
}

#[test]
fn two_variable_classes_round_trip() {
    let a = TwoVarClass::from_class(&"(L-1)/L^(5/2)".parse::<MotClass>().unwrap())
        .mul(&TwoVarClass::x())
        .add(&TwoVarClass::s_pow(3));
    let back = TwoVarClass::from_json(&a.to_json()).unwrap();
    assert_eq!(a, back);
}
