use opetope::{check_omega_laws, dualize_complex, fixtures, IotaReading, Mode};

mod common;

#[test]
fn laws_hold_on_the_fixtures_under_both_readings() {
    for h in [
        fixtures::o1(),
        fixtures::o2(),
        fixtures::o3(),
        fixtures::scard(),
    ] {
        for reading in [IotaReading::FaceWise, IotaReading::SetLevel] {
            let r = check_omega_laws(&h, 3, reading).unwrap();
            assert!(r.passed(), "{reading:?}\n{r}");
        }
    }
}

#[test]
fn laws_hold_on_small_duals() {
    let mut hosts = common::complexes(Mode::Tree, 5);
    hosts.extend(common::complexes(Mode::Thicket, 4));
    for x in hosts {
        let h = dualize_complex(&x).unwrap();
        let r = check_omega_laws(&h, 3, IotaReading::FaceWise).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn readings_agree_on_opetopes() {
    for (_, p) in common::small_opetopes().iter().take(12) {
        let a = check_omega_laws(p, 2, IotaReading::FaceWise).unwrap();
        let b = check_omega_laws(p, 2, IotaReading::SetLevel).unwrap();
        assert!(a.passed() && b.passed());
    }
}
