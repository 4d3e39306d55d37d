mod common;

use common::*;
use envelope_core::diagrams::FlavorKind;
use proptest::prelude::*;

#[test]
fn hom_dimensions_match_closed_counts() {
    check_hom_counts();
}

fn instance() -> impl Strategy<Value = Instance> {
    let w = || prop::collection::vec(any::<bool>(), 0..=2);
    let p = || prop::collection::vec((0usize..1000, -3i64..=3), 1..=3);
    (w(), w(), prop::array::uniform4(any::<u64>()), p(), p(), p(), p())
        .prop_map(|(w0, w1, seeds, p0, p1, p2, p3)| Instance { words: [w0, w1], seeds, picks: [p0, p1, p2, p3] })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn brauer_axioms(inst in instance()) { check_axioms(FlavorKind::Brauer, &inst); }

    #[test]
    fn walled_brauer_axioms(inst in instance()) { check_axioms(FlavorKind::WalledBrauer, &inst); }

    #[test]
    fn partition_axioms(inst in instance()) { check_axioms(FlavorKind::Partition, &inst); }

    #[test]
    fn temperley_lieb_axioms(inst in instance()) { check_axioms(FlavorKind::TemperleyLieb, &inst); }
}
