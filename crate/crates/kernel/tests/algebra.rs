use cmtt_testkit::criteria;

#[test]
fn interval_and_face_oracles() {
    match criteria::algebra() {
        Ok(s) => println!("{s}"),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn guarded_mode_theory() {
    match criteria::mode_g() {
        Ok(s) => println!("{s}"),
        Err(e) => panic!("{e}"),
    }
}
