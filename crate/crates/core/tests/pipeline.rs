//! End-to-end pipeline smoke test through the public API only.

use polespec::{
    Analysis, ArithMode, CheckSelection, HomPoly, PointIdeal, ProjPoint, Rat, WotzlawVariant,
};

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

#[test]
fn one_node_cubic_curve_full_pipeline() {
    // y^2 z = x^3 + x^2 z, the nodal plane cubic with its node at [0:0:1].
    let f = HomPoly::new_input(
        3,
        vec![
            (vec![0, 2, 1], rat(1)),
            (vec![3, 0, 0], rat(-1)),
            (vec![2, 0, 1], rat(-1)),
        ],
    )
    .unwrap();
    let node = ProjPoint::new(vec![rat(0), rat(0), rat(1)]).unwrap();

    let analysis = Analysis::compute(f.clone(), vec![node.clone()], None, ArithMode::Rational)
        .unwrap();
    assert_eq!(analysis.tau(), 1);
    assert_eq!(analysis.kmax, 12);

    // Middle cohomology: zero through the middle, then one forever.
    let snu: Vec<usize> = (1..=8).map(|k| analysis.snu[&k]).collect();
    assert_eq!(snu, vec![0, 0, 0, 1, 1, 1, 1, 1]);
    // Top cohomology stabilizes at the node count.
    assert_eq!(analysis.mu[&12], 1);

    // Here the two spectra coincide and are symmetric around 3/2.
    assert_eq!(analysis.sp, analysis.sp_pole);
    assert_eq!(analysis.sp_pole, analysis.sp_pole_page);
    let row: Vec<i64> = (3..=7).map(|k| analysis.sp.get(k)).collect();
    assert_eq!(row, vec![1, 2, 2, 0, 0]);

    let report = analysis.identity_suite(&CheckSelection::All);
    assert!(report.all_pass(), "{:?}", report.failed());

    // Quotient comparison through the public entry points.
    let ideal = PointIdeal::new(vec![node], 3).unwrap();
    for q in 0..=2 {
        let powers =
            polespec::singular::wotzlaw_quotient_dim(&f, &ideal, q, WotzlawVariant::Powers)
                .unwrap();
        let symbolic =
            polespec::singular::wotzlaw_quotient_dim(&f, &ideal, q, WotzlawVariant::Symbolic)
                .unwrap();
        assert_eq!(powers as i64, analysis.wotzlaw[q as usize].hodge_dim);
        assert_eq!(symbolic, powers);
    }
}
