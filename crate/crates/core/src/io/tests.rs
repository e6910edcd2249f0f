use super::*;
use crate::complex::{cone, disk, disk_inclusion, sphere};
use crate::presentation::restrict;
use crate::spectra::{shift_spectrum, sym_spectrum};

fn z() -> Ring {
    Ring::Integers
}

fn roundtrip<T: Wire + PartialEq + std::fmt::Debug>(x: &T) {
    let text = to_string(x);
    let back: T = from_str(&text).unwrap();
    assert_eq!(&back, x);
    assert_eq!(to_string(&back), text);
}

fn malformed(text: &str) -> String {
    match from_str::<Complex>(text) {
        Err(Error::Malformed(m)) => m,
        other => panic!("expected a malformed-input error, got {other:?}"),
    }
}

#[test]
fn rings_modules_and_maps() {
    roundtrip(&z());
    roundtrip(&Ring::integers_mod(12).unwrap());
    let m = FGModule::from_i64(z(), &[0, 0, 2]).unwrap();
    roundtrip(&m);
    let big = FGModule::new(z(), vec!["123456789012345678901234567890".parse().unwrap()]).unwrap();
    roundtrip(&big);
    let f = ModuleMap::new(
        FGModule::from_i64(z(), &[0]).unwrap(),
        FGModule::from_i64(z(), &[4]).unwrap(),
        Matrix::from_i64(&[&[3]]),
    )
    .unwrap();
    roundtrip(&f);
}

#[test]
fn complexes_and_chain_maps() {
    let e = FGModule::from_i64(z(), &[0, 6]).unwrap();
    let c = cone(&disk_inclusion(&e, 2)).complex;
    roundtrip(&c);
    roundtrip(&Complex::zero(z()));
    roundtrip(&disk_inclusion(&e, -1));
    let text = to_string(&sphere(&FGModule::free(z(), 1), 0));
    assert!(text.contains("\"format\": 1"));
}

#[test]
fn spectra_and_presentations() {
    let s1 = sphere(&FGModule::free(z(), 1), 1);
    roundtrip(&shift_spectrum(&s1, 3).unwrap());
    roundtrip(&sym_spectrum(&s1, 3).unwrap());
    let cat = AddCategory::standard(Ring::integers_mod(2).unwrap());
    roundtrip(&cat);
    let one = FGModule::free(cat.ring().clone(), 1);
    roundtrip(&restrict(&disk(&one, 0), &cat));
}

#[test]
fn descent_and_t_sets() {
    let h = disk(&FGModule::free(z(), 1), 0);
    let dd = DescentData::new(z(), vec![FGModule::free(z(), 1)], vec![Certified::free(&h).unwrap()]).unwrap();
    let back: DescentData = from_str(&to_string(&dd)).unwrap();
    assert_eq!(back.generators(), dd.generators());
    assert_eq!(back.acyclics()[0].complex, h);
    let text = r#"{"format":1,"complexes":[{"ring":{"kind":"Z"},"components":{"-1":{"factors":[0]},"0":{"factors":[0]}},"differentials":{"-1":[[2]]}}]}"#;
    let t: TSetDoc = from_str(text).unwrap();
    assert_eq!(t.tset.complexes().len(), 1);
}

#[test]
fn factor_one_names_the_entry() {
    let m = malformed(r#"{"format":1,"ring":{"kind":"Z"},"components":{"1":{"factors":[0,1]}}}"#);
    assert!(m.contains("components.1.factors[1]"), "{m}");
    assert!(m.contains("factor 1"), "{m}");
}

#[test]
fn other_malformed_inputs() {
    let m = malformed(r#"{"format":1,"ring":{"kind":"Z"},"components":{"0":{"factors":[0]},"1":{"factors":[0]}},"differentials":{"0":[[1,2]]}}"#);
    assert!(m.contains("differentials.0[0]"), "{m}");
    let m = malformed(r#"{"format":1,"ring":{"kind":"Z"},"components":{"0":{"factors":[0]},"1":{"factors":[0]},"2":{"factors":[0]}},"differentials":{"0":[[1]],"1":[[1]]}}"#);
    assert!(m.contains("not a complex") || m.contains("d∘d") || m.contains("<root>"), "{m}");
    let m = malformed(r#"{"ring":{"kind":"Z"},"components":{}}"#);
    assert!(m.contains("format"), "{m}");
    let m = malformed(r#"{"format":2,"ring":{"kind":"Z"},"components":{}}"#);
    assert!(m.contains("unsupported version"), "{m}");
    let m = malformed("{\"format\":1,\n \"ring\": }");
    assert!(m.starts_with("line 2"), "{m}");
    let m = malformed(r#"{"format":1,"ring":{"kind":"Zmod","m":1},"components":{}}"#);
    assert!(m.contains("ring.m"), "{m}");
    let m = malformed(r#"{"format":1,"ring":{"kind":"Z"},"components":{"x":{"factors":[]}}}"#);
    assert!(m.contains("components.x"), "{m}");
    let m = malformed(r#"{"format":1,"ring":{"kind":"Zmod","m":4},"components":{"0":{"factors":[3]}}}"#);
    assert!(m.contains("components.0"), "{m}");
}

#[test]
fn empty_matrices_need_no_rows() {
    let c: Complex = from_str(r#"{"format":1,"ring":{"kind":"Z"},"components":{"0":{"factors":[0]},"2":{"factors":[0]}},"differentials":{"1":[]}}"#).unwrap();
    assert_eq!(c.total_rank(), 2);
}
