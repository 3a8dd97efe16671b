//! Shipped algebras and the worked examples.

use crate::algebra::Algebra;
use crate::io::parse_algebra;

pub const ALGEBRA_FILES: [(&str, &str); 5] = [
    ("dual_numbers.json", include_str!("../catalog/dual_numbers.json")),
    ("a2_path.json", include_str!("../catalog/a2_path.json")),
    ("kronecker.json", include_str!("../catalog/kronecker.json")),
    ("m2.json", include_str!("../catalog/m2.json")),
    ("scalar.json", include_str!("../catalog/scalar.json")),
];

/// Catalog algebra by file name, with or without the `.json` suffix.
pub fn algebra(name: &str) -> Option<Algebra> {
    let base = name.rsplit('/').next().unwrap_or(name);
    ALGEBRA_FILES
        .iter()
        .find(|(f, _)| *f == base || f.strip_suffix(".json") == Some(base))
        .map(|(f, s)| parse_algebra(f, s).expect("catalog algebra parses"))
}

pub fn dual_numbers() -> Algebra {
    algebra("dual_numbers.json").unwrap()
}

pub fn a2() -> Algebra {
    algebra("a2_path.json").unwrap()
}

pub fn kronecker() -> Algebra {
    algebra("kronecker.json").unwrap()
}

pub fn m2() -> Algebra {
    algebra("m2.json").unwrap()
}

pub fn scalar() -> Algebra {
    algebra("scalar.json").unwrap()
}

pub fn all_algebras() -> Vec<Algebra> {
    ALGEBRA_FILES
        .iter()
        .map(|(f, s)| parse_algebra(f, s).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads() {
        assert_eq!(dual_numbers().dim, 2);
        assert_eq!(kronecker().dim, 4);
        assert!(kronecker().verify_idempotent_family().pass);
        assert!(algebra("m2").is_some());
        assert!(algebra("nope.json").is_none());
        assert_eq!(scalar(), Algebra::scalar());
    }
}
