use cmtt_testkit::criteria;

#[test]
fn modal_composition_instances() {
    match criteria::comp_mod(1000, 0x5eed) {
        Ok(s) => println!("{s}"),
        Err(e) => panic!("{e}"),
    }
}
