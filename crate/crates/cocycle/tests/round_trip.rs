use cocycle::format::{
    document, parse_document, AbelianPairJson, BraidingJson, CochainJson, CoquasiJson, ExtensionJson, GroupJson,
    HomJson, QlsJson, QuadraticFormJson,
};
use cocycle_core::abelian::{quinn_pair, QuadraticForm};
use cocycle_core::breen::trivialize;
use cocycle_core::cochain::{cohomology_group, cyclic_class_cocycle, Budget};
use cocycle_core::cqha::{build_bosonization, build_group_cqha, BosonizationOptions, QlsDatum};
use cocycle_core::group::canonical_doubling;
use cocycle_core::nichols::DiagonalDatum;
use cocycle_core::pointed::ExtensionDatum;
use cocycle_core::{Character, FinAbGroup};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn through_text<T: Serialize + DeserializeOwned>(kind: &str, body: &T) -> T {
    let text = serde_json::to_string_pretty(&document(kind, body)).unwrap();
    parse_document(&text, kind).unwrap()
}

fn groups() -> Vec<FinAbGroup> {
    [&[2u64][..], &[3], &[4], &[6], &[2, 2], &[2, 4], &[2, 2, 2]].iter().map(|f| FinAbGroup::new(f).unwrap()).collect()
}

#[test]
fn groups_homs_and_cochains() {
    for g in groups() {
        let back = through_text("group", &GroupJson::from_group(&g)).to_group().unwrap();
        assert_eq!(back, g);
        let (_, p) = canonical_doubling(&g);
        assert_eq!(through_text("hom", &HomJson::from_hom(&p)).to_hom().unwrap(), p);
        for w in cohomology_group(&g, 3, g.exponent()).unwrap().representatives {
            assert_eq!(through_text("cochain", &CochainJson::from_cochain(&w)).to_cochain().unwrap(), w);
        }
    }
}

#[test]
fn forms_pairs_and_extension_data() {
    let g = FinAbGroup::new(&[2, 4]).unwrap();
    let q = QuadraticForm::from_coefficients(&g, 32, &[8, 4], &[vec![0, 16], vec![0, 0]]).unwrap();
    assert_eq!(through_text("quadratic_form", &QuadraticFormJson::from_form(&q)).to_form().unwrap(), q);
    let pair = quinn_pair(&q).unwrap();
    assert_eq!(through_text("abelian_pair", &AbelianPairJson::from_pair(&pair)).to_pair().unwrap(), pair);

    let a = FinAbGroup::new(&[2, 2]).unwrap();
    let b = FinAbGroup::cyclic(2).unwrap();
    let table = (0..16).map(|i| Character::new(&b, &[((i / 4) >> 1) * ((i % 4) & 1)]).unwrap()).collect();
    let d = ExtensionDatum::new(a, b, table).unwrap();
    assert_eq!(through_text("extension_datum", &ExtensionJson::from_datum(&d)).to_datum().unwrap(), d);

    let br = DiagonalDatum::new(3, 12, vec![6, 1, 2, 11, 4, 0, 10, 0, 3]).unwrap();
    assert_eq!(through_text("braiding", &BraidingJson::from_datum(&br)).to_datum().unwrap(), br);
}

#[test]
fn quantum_line_data_and_structure_tables() {
    let w = cyclic_class_cocycle(2, 1, 2).unwrap();
    let t = trivialize(&w, 1, &Budget::default()).unwrap().unwrap();
    let d = QlsDatum::new(w, t.p, t.alpha, t.gamma.generator(0), Character::new(&t.gamma, &[3]).unwrap(), 4).unwrap();
    assert_eq!(through_text("qls_datum", &QlsJson::from_datum(&d)).to_datum().unwrap(), d);

    let b = build_bosonization(&d, &BosonizationOptions::default()).unwrap();
    for h in [b.quotient, b.twisted, b.hopf, build_group_cqha(&cyclic_class_cocycle(6, 5, 6).unwrap()).unwrap()] {
        assert_eq!(through_text("coquasi", &CoquasiJson::from_data(&h)).to_data().unwrap(), h);
    }
}
