use cmweyl::free::{AutGenerator, Automorphism};
use cmweyl::rat::rat;
use cmweyl::resolution::omega_ideal;
use cmweyl::theta::{theta, ThetaOptions, TieBreak};
use cmweyl::{equivalent, CMPoint, Error, UniPoly, WeylElement};

fn roundtrip_points() -> Vec<CMPoint> {
    let mut pts = vec![CMPoint::empty(), CMPoint::zero_point()];
    for (a, b) in [(1, 0), (0, 1), (1, -2), (-2, 1)] {
        pts.push(CMPoint::single(rat(a), rat(b)));
    }
    pts.push(CMPoint::nilpotent2());
    pts
}

#[test]
fn theta_inverts_omega() {
    for p in roundtrip_points() {
        for tie in [TieBreak::MaxL, TieBreak::MinL] {
            let ideal = omega_ideal(&p).unwrap();
            let q = theta(
                &ideal.cleared_generators(),
                ThetaOptions {
                    tie,
                    ..Default::default()
                },
            )
            .unwrap()
            .point;
            let eq = equivalent(&p, &q).unwrap();
            assert!(eq.equivalent, "{p:?} -> {q:?}: {:?}", eq.witness);
            assert_eq!(p.lambda_table(4), q.lambda_table(4));
        }
    }
}

#[test]
fn theta_is_equivariant() {
    for p in roundtrip_points() {
        check_equivariance(&p);
    }
}

fn check_equivariance(p: &CMPoint) {
    let ideal = omega_ideal(p).unwrap();
    let base = theta(&ideal.cleared_generators(), ThetaOptions::default())
        .unwrap()
        .point;
    let gens = [
        AutGenerator::ShiftY(UniPoly::from_ints(&[0, 1])),
        AutGenerator::ShiftY(UniPoly::from_ints(&[0, 0, 1])),
        AutGenerator::ShiftX(UniPoly::from_ints(&[0, 1])),
    ];
    for g in gens {
        let sigma = Automorphism::from_generator(&g).unwrap();
        let moved: Vec<WeylElement> = ideal
            .cleared_generators()
            .iter()
            .map(|a| sigma.apply(a))
            .collect();
        let rhs = base.act(&sigma).unwrap();
        let lhs = match theta(&moved, ThetaOptions::default()) {
            Ok(o) => o.point,
            Err(Error::NonSplitSpectrum { factor }) => {
                // the moved point itself has an irrational spectrum
                let (_, rest) = rhs.x.charpoly().rational_roots();
                assert_eq!(rest.display_in("t"), factor);
                continue;
            }
            Err(e) => panic!("{p:?} {g:?}: {e}"),
        };
        let eq = equivalent(&lhs, &rhs).unwrap();
        assert!(
            eq.equivalent,
            "{g:?}: {lhs:?} vs {rhs:?} ({:?})",
            eq.witness
        );
    }
}
