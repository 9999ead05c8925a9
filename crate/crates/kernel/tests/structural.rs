use cmtt_testkit::criteria;

#[test]
fn substitution_normalization_and_splitting() {
    match criteria::structural(1000, 0xc0ffee) {
        Ok(s) => println!("{s}"),
        Err(e) => panic!("{e}"),
    }
}
