use proptest::prelude::*;
use skewcoh::bases::io::{format_bases, parse_bases};
use skewcoh::bases::{check_amub, represent_in_basis, standard_amubs, AmubLabel};
use skewcoh::channels::{apply_product_channel, reduced_channel, ChannelKind};
use skewcoh::coherence::{cf_bd, cf_xz_a1, coherence_numeric, coherence_skew_sum};
use skewcoh::states::{bell_diagonal, x_state_z, BellDiagonalParams, XStateZParams};
use skewcoh::surfaces::{extract_isosurface, mesh_obj, sample_bd_field, FieldMeasure};

fn bell_params() -> impl Strategy<Value = BellDiagonalParams> {
    (-1.0f64..=1.0, -1.0f64..=1.0, -1.0f64..=1.0)
        .prop_filter_map("outside tetrahedron", |(a, b, c)| {
            BellDiagonalParams::new(a, b, c).ok()
        })
}

fn xz_params() -> impl Strategy<Value = XStateZParams> {
    (
        -1.0f64..=1.0,
        -1.0f64..=1.0,
        -1.0f64..=1.0,
        -1.0f64..=1.0,
        -1.0f64..=1.0,
    )
        .prop_filter_map("not a state", |(r, s, a, b, c)| {
            XStateZParams::new(r, s, a, b, c).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn closed_form_agrees_with_both_numeric_routes(p in bell_params()) {
        let rho = bell_diagonal(&p);
        for b in AmubLabel::ALL {
            let cf = cf_bd(&p, b).value();
            prop_assert!((coherence_numeric(&rho, b.basis()).unwrap().value() - cf).abs() < 1e-9);
            prop_assert!((coherence_skew_sum(&rho, b.basis()).unwrap() - cf).abs() < 1e-9);
        }
    }

    #[test]
    fn x_state_closed_form_agrees_with_numeric(p in xz_params()) {
        let rho = x_state_z(&p).unwrap();
        let num = coherence_numeric(&rho, AmubLabel::A1.basis()).unwrap().value();
        prop_assert!((cf_xz_a1(&p).unwrap().value() - num).abs() < 1e-9);
    }

    #[test]
    fn coherence_does_not_depend_on_representation(p in bell_params()) {
        let rho = bell_diagonal(&p);
        let moved = represent_in_basis(&rho, AmubLabel::A2.basis()).unwrap();
        let moved = skewcoh::states::DensityMatrix::new(moved).unwrap();
        let computational = skewcoh::bases::OrthonormalBasis::computational(4);
        let a = coherence_numeric(&moved, &computational).unwrap().value();
        prop_assert!((a - cf_bd(&p, AmubLabel::A2).value()).abs() < 1e-9);
    }

    #[test]
    fn channels_never_raise_a1_coherence_of_bell_states(p in bell_params(), q in 0.0f64..=1.0) {
        let rho = bell_diagonal(&p);
        let before = coherence_numeric(&rho, AmubLabel::A1.basis()).unwrap().value();
        for kind in [ChannelKind::Pf, ChannelKind::Gad] {
            let out = apply_product_channel(&reduced_channel(kind, q).unwrap(), &rho).unwrap();
            let after = coherence_numeric(&out, AmubLabel::A1.basis()).unwrap().value();
            prop_assert!(after <= before + 1e-9, "{kind}: {before} -> {after}");
        }
    }
}

#[test]
fn standard_amubs_survive_text_round_trip() {
    let text = format_bases(standard_amubs().bases());
    let parsed = parse_bases(&text).unwrap();
    assert_eq!(parsed.len(), 3);
    assert!(check_amub(&parsed).unwrap().passed(1e-12));
}

#[test]
fn coarse_surface_exports_consistent_obj() {
    let field = sample_bd_field(FieldMeasure::Basis(AmubLabel::A1), 25).unwrap();
    let mesh = extract_isosurface(&field, 0.1).unwrap();
    assert!(!mesh.is_empty());
    let obj = mesh_obj(&mesh);
    let verts = obj.lines().filter(|l| l.starts_with("v ")).count();
    let faces: Vec<&str> = obj.lines().filter(|l| l.starts_with("f ")).collect();
    assert_eq!(verts, mesh.vertices.len());
    assert_eq!(faces.len(), mesh.triangles.len());
    for f in faces {
        for idx in f.split_whitespace().skip(1) {
            let i: usize = idx.parse().unwrap();
            assert!((1..=verts).contains(&i));
        }
    }
}
