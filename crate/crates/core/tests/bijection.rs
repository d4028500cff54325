use cpl_core::bijection::{
    case_maps_mod, certificate, exhaustive_match, half_integer_flip, hadamard_maps,
    quadruple_involution, reflect, residual, unit_vector, unresidual, value, DElement, Element,
    QuadrupleContext, ReflectionBasis, Side, Tag, ValueContext,
};
use cpl_core::{Error, RANK};
use proptest::prelude::*;

/// Doubled vector with entries of the given parity and `Σt ≡ 2 (mod 4)`.
fn admissible(parity: i32, raw: [i32; RANK]) -> [i32; RANK] {
    let mut t = raw.map(|x| 2 * x + parity);
    if t.iter().sum::<i32>().rem_euclid(4) != 2 {
        t[0] += 2;
    }
    t
}

fn d_element() -> impl Strategy<Value = DElement> {
    (0..2i32, proptest::array::uniform12(-3i32..=3))
        .prop_map(|(p, raw)| DElement::new(admissible(p, raw)).unwrap())
}

fn basis_dot(i: usize, t: &[i32; RANK]) -> i32 {
    ReflectionBasis::get().dot(i, t) / 2
}

#[test]
fn reflection_example() {
    let d = DElement::from_integers([1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    let r = reflect(&d, 1).unwrap();
    assert_eq!(r.doubled(), &[1, 1, 1, -1, -1, -1, -1, -1, -1, -1, -1, -1]);
    assert_eq!(r.norm4(), 12);
    assert_eq!(d.norm4(), 12);
}

#[test]
fn residual_example() {
    let d = DElement::from_integers([1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    let (z, f) = residual(&d).unwrap();
    assert_eq!(f, [0; RANK]);
    assert_eq!(&unit_vector(z).unwrap(), d.doubled());
    let ctx = ValueContext::new(2, &[1; RANK], 0);
    assert_eq!(value(&d, &ctx).unwrap(), 1);
}

#[test]
fn value_examples() {
    let ctx = ValueContext::new(2, &[1; RANK], 0);
    let mut t = [1; RANK];
    t[RANK - 1] = -1;
    assert_eq!(value(&DElement::new(t).unwrap(), &ctx).unwrap(), 3);
    assert!(DElement::new([0; RANK]).is_err());
}

#[test]
fn flip_examples() {
    let mut e = [0; RANK];
    e[0] = 1;
    let d = half_integer_flip(&e, 2, &[1; RANK], &[0; RANK], 3).unwrap();
    let mut expect = [1; RANK];
    expect[RANK - 1] = -1;
    assert_eq!(d.doubled(), &expect);
    assert_eq!(value(&d, &ValueContext::new(2, &[1; RANK], 0)).unwrap(), 3);
    assert!(matches!(
        half_integer_flip(&e, 2, &[1; RANK], &[1; RANK], 3),
        Err(Error::Domain(_))
    ));
}

#[test]
fn involution_example() {
    let mut w = [0; RANK];
    w[0] = 2;
    let img = quadruple_involution(&w).unwrap();
    assert_eq!(img[..4], [1, 1, 1, -1]);
    assert_eq!(img[4..], [0; 8]);
    assert_eq!(quadruple_involution(&img).unwrap(), w);
}

#[test]
fn mod_six_examples() {
    let e = Element {
        family: 0,
        copy: 0,
        t: [2, 2, 2, 2, 2, 0, 0, 0, 0, 0, 0, 0],
    };
    let cert = certificate(Tag::SumMod6);
    let (side, img) = case_maps_mod(Tag::SumMod6, &e).unwrap();
    assert_eq!(img.t, e.t.map(|x| x - 1));
    assert_eq!(Some(side.opposite()), cert.side(&e));
    assert_eq!(cert.value(&img), cert.value(&e));
    assert!(case_maps_mod(Tag::QuadrupleShift, &e).is_err());
}

#[test]
fn sum_three_keeps_sum() {
    let cert = certificate(Tag::SumMod6);
    let e = Element {
        family: 0,
        copy: 0,
        t: [2, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    };
    let (_, img) = cert.apply(&e).unwrap();
    assert_eq!(img.t.iter().sum::<i32>(), 6);
    assert_eq!(cert.value(&img), cert.value(&e));
}

#[test]
fn split_sum_one_has_two_images() {
    let cert = certificate(Tag::SplitSumMod6);
    let images: Vec<Element> = (0..2)
        .map(|copy| {
            let e = Element {
                family: 0,
                copy,
                t: [2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            };
            cert.apply(&e).unwrap().1
        })
        .collect();
    assert_ne!(images[0], images[1]);
    let x = |t: &[i32; RANK]| (t[..6].iter().sum::<i32>() - t[6..].iter().sum::<i32>()) / 2;
    let mut residues: Vec<i32> = images.iter().map(|e| x(&e.t).rem_euclid(6)).collect();
    residues.sort();
    assert_eq!(residues, vec![1, 5]);
}

#[test]
fn quadruple_shift_example() {
    let e = Element {
        family: 0,
        copy: 0,
        t: [4, 2, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0],
    };
    // x = 5, so each of the first four coordinates drops by 2.
    let (_, img) = hadamard_maps(Tag::QuadrupleShift, &e).unwrap();
    assert_eq!(img.t[..4], [0, -2, -2, -2]);
    let cert = certificate(Tag::QuadrupleShift);
    assert_eq!(cert.value(&img), cert.value(&e));
}

#[test]
fn vacuous_below_minimum() {
    for tag in Tag::ALL {
        let r = exhaustive_match(tag, -5).unwrap();
        assert_eq!(r.elements, 0);
    }
}

#[test]
fn small_certificates_reconcile() {
    for tag in Tag::ALL {
        let r = exhaustive_match(tag, 12).unwrap();
        let claimed: u64 = r.cases.iter().map(|c| c.elements).sum();
        assert_eq!(claimed, r.elements, "{tag}");
        for row in &r.values {
            assert_eq!(row.left, row.right, "{tag} value {}", row.value);
            assert_eq!(row.left, row.expected_left, "{tag} value {}", row.value);
        }
    }
}

#[test]
fn report_serializes() {
    let r = exhaustive_match(Tag::HadamardShift, 4).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["tag"], "lemma3_7");
    assert!(v["cases"].as_array().unwrap().len() >= 6);
    assert_eq!(v["values"].as_array().unwrap().len(), 5);
}

fn certificate_element(tag: Tag) -> impl Strategy<Value = Element> {
    let shapes = certificate(tag).family_shapes();
    (0..shapes.len(), 0u8..4, 0..2i32, proptest::array::uniform12(-2i32..=2)).prop_map(
        move |(f, copy, p, raw)| {
            let (copies, half) = shapes[f];
            let parity = if half { p } else { 0 };
            Element {
                family: f as u8,
                copy: copy % copies,
                t: admissible(parity, raw),
            }
        },
    )
}

fn tag() -> impl Strategy<Value = Tag> {
    proptest::sample::select(Tag::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dots_are_odd(d in d_element()) {
        for i in 0..RANK {
            prop_assert_eq!(basis_dot(i, d.doubled()).rem_euclid(2), 1);
        }
    }

    #[test]
    fn reflection_laws(d in d_element()) {
        for i in 1..=RANK {
            let dv = basis_dot(i - 1, d.doubled());
            let r = reflect(&d, i);
            if dv % 3 != 0 {
                prop_assert!(r.is_err());
                continue;
            }
            let r = r.unwrap();
            prop_assert_eq!(r.norm4(), d.norm4());
            prop_assert_ne!(r.is_integer(), d.is_integer());
            prop_assert_eq!(reflect(&r, i).unwrap(), d);
            for j in 0..RANK {
                if j != i - 1 {
                    prop_assert_eq!(basis_dot(j, r.doubled()), basis_dot(j, d.doubled()));
                }
            }
        }
    }

    #[test]
    fn residual_laws(d in d_element()) {
        if let Ok((z, f)) = residual(&d) {
            prop_assert!((1..=24).contains(&z));
            let pent: i64 = f.iter().map(|&x| x as i64 * (3 * x as i64 - 1)).sum();
            prop_assert_eq!(d.norm4(), 4 * (pent + 1));
            prop_assert_eq!(f.iter().sum::<i32>().rem_euclid(2) == 0, d.is_integer());
            prop_assert_eq!(unresidual(z, &f).unwrap(), d);
        } else {
            prop_assert!((0..RANK).any(|i| basis_dot(i, d.doubled()) % 3 == 0));
        }
    }

    #[test]
    fn flip_preserves_value(raw in proptest::array::uniform12(-8i32..=8)) {
        let mut e = raw;
        if e.iter().sum::<i32>().rem_euclid(2) == 0 {
            e[0] += 1;
        }
        // Mod-6 pair with A = 2, B = 1 satisfies both hypotheses.
        let d = half_integer_flip(&e, 6, &[2; RANK], &[1; RANK], 3).unwrap();
        let lhs = value(&d, &ValueContext::new(6, &[2; RANK], 0)).unwrap();
        let rhs = ValueContext::new(6, &[1; RANK], 3).value_of(&e.map(|x| 2 * x)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn involution_laws(shape in 0u32..8, raw in proptest::array::uniform12(-3i32..=3)) {
        let mut t: [i32; RANK] = std::array::from_fn(|i| 2 * raw[i] + ((shape >> (i / 4)) & 1) as i32);
        if t.iter().sum::<i32>().rem_euclid(4) != 2 {
            t[0] += 2;
        }
        let ctx = QuadrupleContext::new(10, [2, 2, 4, 4]).unwrap();
        let img = quadruple_involution(&t).unwrap();
        prop_assert_eq!(quadruple_involution(&img).unwrap(), t);
        let vc = ctx.value_context();
        prop_assert_eq!(vc.value_of(&t).unwrap(), vc.value_of(&img).unwrap());
        let halves = |v: &[i32; RANK]| (0..3).filter(|q| v[4 * q].rem_euclid(2) == 1).count();
        prop_assert_eq!((halves(&t) + halves(&img)) % 2, 1);
    }

    #[test]
    fn case_maps_pair_up((tag, e) in tag().prop_flat_map(|t| (Just(t), certificate_element(t)))) {
        let cert = certificate(tag);
        prop_assume!(cert.contains(&e));
        let (side, img) = cert.apply(&e).unwrap();
        prop_assert_eq!(Some(side), cert.side(&img));
        prop_assert_eq!(cert.side(&e).map(Side::opposite), Some(side));
        prop_assert_eq!(cert.value(&img), cert.value(&e));
        let (_, back) = cert.apply(&img).unwrap();
        prop_assert_eq!(back, e);
    }
}
