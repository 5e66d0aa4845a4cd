//! The named-identity corpus: every classical and constructed dependency the
//! tool ships with, built exactly and verified on first use.

use super::BuildError;
use crate::dependence::PowerIdentity;
use crate::exact::{parse_scalar, rat_int, AlgebraicScalar, Rational};
use crate::forms::{BinaryForm, GenForm, GenLinearChange};
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

/// One corpus entry: a verified identity with its provenance tag.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Human-readable provenance (construction or historical source).
    pub tag: &'static str,
    pub identity: PowerIdentity,
}

fn sc(s: &str) -> AlgebraicScalar {
    parse_scalar(s).unwrap_or_else(|e| panic!("catalog scalar '{}': {}", s, e))
}

fn form(coeffs: &[&str]) -> BinaryForm {
    GenForm::new(coeffs.iter().map(|s| sc(s)).collect())
}

fn entry(
    name: &'static str,
    tag: &'static str,
    d: u32,
    terms: Vec<(AlgebraicScalar, BinaryForm)>,
) -> CatalogEntry {
    let identity = PowerIdentity::new(d, terms)
        .unwrap_or_else(|e| panic!("catalog entry '{}': {}", name, e));
    CatalogEntry {
        name,
        tag,
        identity,
    }
}

/// The six-form quartic family: f1 = x^2 + sqrt(3) xy - y^2, f2 its xy-flip,
/// and their images under (x, y) -> (w^2 x, w y) twice.
fn quartic13_forms() -> Vec<BinaryForm> {
    let f1 = form(&["1", "sqrt(3)", "-1"]);
    let f2 = form(&["1", "-sqrt(3)", "-1"]);
    let m1 = GenLinearChange::new(sc("omega^2"), sc("0"), sc("0"), sc("omega"));
    let f3 = f1.compose(&m1);
    let f4 = f2.compose(&m1);
    let f5 = f3.compose(&m1);
    let f6 = f4.compose(&m1);
    vec![f1, f2, f3, f4, f5, f6]
}

/// The four quintic forms cycled by (x, y) -> (zeta_8 x, zeta_8^3 y).
pub(crate) fn quintic_forms() -> Vec<BinaryForm> {
    let f1 = form(&["1", "sqrt(-2)", "1"]);
    let m4 = GenLinearChange::new(sc("zeta(8,1)"), sc("0"), sc("0"), sc("zeta(8,3)"));
    let f2 = f1.compose(&m4);
    let f3 = f2.compose(&m4);
    let f4 = f3.compose(&m4);
    vec![f1, f2, f3, f4]
}

fn one() -> AlgebraicScalar {
    AlgebraicScalar::one()
}

fn neg_one() -> AlgebraicScalar {
    AlgebraicScalar::one().neg()
}

/// The three-representation cubic family at a rational parameter
/// a not in {0, 1, -1}: first line minus second line as a 4-term identity.
pub fn threefold_family(a: &Rational) -> Result<PowerIdentity, BuildError> {
    if a.is_zero() || a.is_one() || (-a.clone()).is_one() {
        return Err(BuildError::Parameter(
            "threefold parameter must avoid 0, 1, -1".into(),
        ));
    }
    let av = AlgebraicScalar::from_rational(a.clone());
    let w = sc("omega");
    let w2 = sc("omega^2");
    let f1 = GenForm::new(vec![av.clone(), neg_one(), av.clone()]);
    let f2 = GenForm::new(vec![neg_one(), av.clone(), neg_one()]);
    let f3 = GenForm::new(vec![w2.mul(&av), neg_one(), w.mul(&av)]);
    let f4 = GenForm::new(vec![w2.neg(), av.clone(), w.neg()]);
    PowerIdentity::new(
        3,
        vec![
            (one(), f1),
            (av.clone(), f2),
            (neg_one(), f3),
            (av.neg(), f4),
        ],
    )
    .map_err(|e| BuildError::Failed(format!("threefold: {e}")))
}

/// The same family after the real change of variables, at a rational
/// parameter.
pub fn threefold_real_family(a: &Rational) -> Result<PowerIdentity, BuildError> {
    if a.is_zero() || a.is_one() || (-a.clone()).is_one() {
        return Err(BuildError::Parameter(
            "threefold parameter must avoid 0, 1, -1".into(),
        ));
    }
    let r = |q: Rational| AlgebraicScalar::from_rational(q);
    let two = rat_int(2);
    let three = rat_int(3);
    let six = rat_int(6);
    let one_r = rat_int(1);
    let f1 = GenForm::new(vec![
        r(&one_r - &(&two * a)),
        AlgebraicScalar::zero(),
        r(&three * &(&one_r + &(&two * a))),
    ]);
    let f2 = GenForm::new(vec![
        r(&two - a),
        AlgebraicScalar::zero(),
        r(-(&three * &(&two + a))),
    ]);
    let f3 = GenForm::new(vec![
        r(&one_r + a),
        r(&six * a),
        r(&three * &(&one_r - a)),
    ]);
    let f4 = GenForm::new(vec![
        r(-(&one_r + a)),
        r(-six.clone()),
        r(&three * &(&one_r - a)),
    ]);
    let av = AlgebraicScalar::from_rational(a.clone());
    PowerIdentity::new(
        3,
        vec![
            (one(), f1),
            (av.clone(), f2),
            (neg_one(), f3),
            (av.neg(), f4),
        ],
    )
    .map_err(|e| BuildError::Failed(format!("threefold-real: {e}")))
}

fn build_catalog() -> Vec<CatalogEntry> {
    let mut entries: Vec<CatalogEntry> = Vec::new();

    entries.push(entry(
        "pythagorean",
        "classical parameterization of squares",
        2,
        vec![
            (one(), form(&["1", "0", "-1"])),
            (one(), form(&["0", "2", "0"])),
            (neg_one(), form(&["1", "0", "1"])),
        ],
    ));

    entries.push(entry(
        "gerardin-cubic",
        "Gerardin/Elkies two cubes",
        3,
        vec![
            (one(), form(&["1", "1", "-1"])),
            (one(), form(&["1", "-1", "-1"])),
            (sc("-2"), form(&["1", "0", "0"])),
            (sc("2"), form(&["0", "0", "1"])),
        ],
    ));

    entries.push(entry(
        "quartic18",
        "three quartics summing to a monomial",
        4,
        vec![
            (one(), form(&["1", "0", "1"])),
            (one(), form(&["omega", "0", "omega^2"])),
            (one(), form(&["omega^2", "0", "omega"])),
            (sc("-18"), form(&["0", "1", "0"])),
        ],
    ));

    entries.push({
        let forms = quintic_forms();
        entry(
            "elkies-quintic",
            "Desboves/Elkies four quintics",
            5,
            forms.into_iter().map(|f| (one(), f)).collect(),
        )
    });

    entries.push(entry(
        "sextic80",
        "four sixth powers summing to a monomial",
        6,
        vec![
            (one(), form(&["1", "0", "1"])),
            (sc("i"), form(&["1", "0", "i"])),
            (sc("-1"), form(&["1", "0", "-1"])),
            (sc("-i"), form(&["1", "0", "-i"])),
            (sc("-80"), form(&["0", "1", "0"])),
        ],
    ));

    entries.push(entry(
        "septic26",
        "four seventh powers summing to a monomial",
        7,
        vec![
            (one(), form(&["1", "sqrt(-6/5)", "1"])),
            (one(), form(&["-i", "sqrt(-6/5)", "i"])),
            (one(), form(&["-1", "sqrt(-6/5)", "-1"])),
            (one(), form(&["i", "sqrt(-6/5)", "-i"])),
            (sc("26*sqrt(-3)*sqrt(8/5)^7"), form(&["0", "1", "0"])),
        ],
    ));

    entries.push({
        let mut terms: Vec<(AlgebraicScalar, BinaryForm)> = Vec::new();
        for j in 0..5i64 {
            terms.push((
                one(),
                GenForm::new(vec![
                    AlgebraicScalar::zeta_pow(5, j),
                    sc("i"),
                    AlgebraicScalar::zeta_pow(5, -j),
                ]),
            ));
        }
        terms.push((sc("-5^7"), form(&["0", "1", "0"])));
        entry(
            "icosa14",
            "icosahedral fourteenth powers",
            14,
            terms,
        )
    });

    entries.push({
        let id = threefold_family(&rat_int(2)).expect("alpha = 2 is admissible");
        CatalogEntry {
            name: "threefold",
            tag: "three-representation cubic family at alpha = 2",
            identity: id,
        }
    });

    entries.push({
        let id = threefold_real_family(&rat_int(2)).expect("alpha = 2 is admissible");
        CatalogEntry {
            name: "threefold-real",
            tag: "real form of the cubic family at alpha = 2",
            identity: id,
        }
    });

    entries.push(entry(
        "quartic-integer",
        "integer quartic cousin of quartic18",
        4,
        vec![
            (one(), form(&["1", "2", "0"])),
            (one(), form(&["0", "2", "1"])),
            (one(), form(&["1", "0", "-1"])),
            (sc("-2"), form(&["1", "1", "1"])),
        ],
    ));

    entries.push(entry(
        "quintic-synch",
        "trinomial synching at degree five",
        5,
        vec![
            (one(), form(&["1", "sqrt(-1/2)", "1"])),
            (one(), form(&["omega", "sqrt(-1/2)", "omega^2"])),
            (one(), form(&["omega^2", "sqrt(-1/2)", "omega"])),
            (sc("-243/4*sqrt(-1/2)"), form(&["0", "1", "0"])),
        ],
    ));

    entries.push({
        let mut terms: Vec<(AlgebraicScalar, BinaryForm)> = Vec::new();
        for k in 0..3i64 {
            terms.push((
                one(),
                GenForm::new(vec![
                    AlgebraicScalar::zeta_pow(3, k),
                    sc("phi^2"),
                    AlgebraicScalar::zeta_pow(3, -k).neg(),
                ]),
            ));
        }
        for k in 0..3i64 {
            terms.push((
                one(),
                GenForm::new(vec![
                    AlgebraicScalar::zeta_pow(3, k).mul(&sc("phi")),
                    sc("-(phi - 1)"),
                    AlgebraicScalar::zeta_pow(3, -k).mul(&sc("phi")).neg(),
                ]),
            ));
        }
        entry(
            "icosa-triads",
            "two coordinated triads of fourteenth powers",
            14,
            terms,
        )
    });

    entries.push(entry(
        "icosa-schoenemann",
        "icosahedral vertex-coefficient cousin",
        14,
        vec![
            (one(), form(&["1", "2*phi", "-1"])),
            (one(), form(&["1", "-2*phi", "-1"])),
            (
                one(),
                form(&["phi+i", "0", "-(phi+i)*(1-2*i)*sqrt(5)/5"]),
            ),
            (
                one(),
                form(&["phi-i", "0", "-(phi-i)*(1+2*i)*sqrt(5)/5"]),
            ),
            (neg_one(), form(&["phi", "2*i", "phi"])),
            (neg_one(), form(&["phi", "-2*i", "phi"])),
        ],
    ));

    entries.push({
        let mut terms: Vec<(AlgebraicScalar, BinaryForm)> = Vec::new();
        for k in 0..4i64 {
            let ik = AlgebraicScalar::zeta_pow(4, k);
            let i2k = AlgebraicScalar::zeta_pow(4, 2 * k);
            let i3k = AlgebraicScalar::zeta_pow(4, 3 * k);
            let l = if k % 2 == 0 { one() } else { neg_one() };
            terms.push((
                l,
                GenForm::new(vec![
                    one(),
                    ik.mul(&sc("sqrt(6)")),
                    i2k.scale_rat(&rat_int(-6)),
                    i3k.mul(&sc("-sqrt(6)")),
                    one(),
                ]),
            ));
        }
        entry(
            "quarcube",
            "four dependent cubes of independent quartics",
            3,
            terms,
        )
    });

    entries.push(entry(
        "quartic18-diag",
        "diagonalized presentation of quartic18",
        4,
        vec![
            (one(), form(&["1", "0", "1"])),
            (sc("-18"), form(&["0", "1", "0"])),
            (one(), form(&["omega", "0", "omega^2"])),
            (one(), form(&["omega^2", "0", "omega"])),
        ],
    ));

    entries.push(entry(
        "quartic18-diag2",
        "second diagonalization of quartic18",
        4,
        vec![
            (neg_one(), form(&["2", "0", "2"])),
            (sc("18"), form(&["1", "0", "-1"])),
            (neg_one(), form(&["1", "2*sqrt(-3)", "1"])),
            (neg_one(), form(&["1", "-2*sqrt(-3)", "1"])),
        ],
    ));

    entries.push(entry(
        "quartic13-diag",
        "diagonalization of the quartic13 family",
        4,
        vec![
            (
                one(),
                form(&["(2+sqrt(-3))/2", "0", "-(2-sqrt(-3))/2"]),
            ),
            (
                neg_one(),
                form(&["(2-sqrt(-3))/2", "0", "-(2+sqrt(-3))/2"]),
            ),
            (neg_one(), form(&["omega", "-sqrt(3)", "-omega^2"])),
            (one(), form(&["omega^2", "-sqrt(3)", "-omega"])),
        ],
    ));

    entries.push(entry(
        "quartic13-diag2",
        "second diagonalization of the quartic13 family",
        4,
        vec![
            (one(), form(&["1+sqrt(-6)", "0", "1-sqrt(-6)"])),
            (one(), form(&["1-sqrt(-6)", "0", "1+sqrt(-6)"])),
            (neg_one(), form(&["1", "2*sqrt(-6)", "1"])),
            (neg_one(), form(&["1", "-2*sqrt(-6)", "1"])),
        ],
    ));

    entries.push(entry(
        "quintic-diag",
        "diagonalization of the quintic family",
        5,
        vec![
            (one(), form(&["1-sqrt(-2)", "0", "1+sqrt(-2)"])),
            (one(), form(&["1+sqrt(-2)", "0", "1-sqrt(-2)"])),
            (neg_one(), form(&["1", "-2*sqrt(-2)", "1"])),
            (neg_one(), form(&["1", "2*sqrt(-2)", "1"])),
        ],
    ));

    entries.push(entry(
        "quintic-flip",
        "flip presentation of the quintic family",
        5,
        vec![
            (one(), form(&["1", "sqrt(-2)", "1"])),
            (one(), form(&["-1", "sqrt(-2)", "-1"])),
            (one(), form(&["i", "-sqrt(-2)", "-i"])),
            (one(), form(&["-i", "-sqrt(-2)", "i"])),
        ],
    ));

    entries.push({
        let f = quartic13_forms();
        let half = sc("1/2");
        entry(
            "quartic13",
            "six-form quartic family with three equal differences",
            4,
            vec![
                (one(), f[0].clone()),
                (neg_one(), f[1].clone()),
                (half.neg(), f[2].clone()),
                (half.clone(), f[3].clone()),
                (half.neg(), f[4].clone()),
                (half, f[5].clone()),
            ],
        )
    });

    entries.push(entry(
        "wild-quartic-plus",
        "wild quartic solution, plus branch",
        4,
        vec![
            (one(), form(&["1", "-sqrt(-3)", "1"])),
            (one(), form(&["omega^2", "sqrt(-3)", "omega"])),
            (neg_one(), form(&["1", "sqrt(-3)", "1"])),
            (neg_one(), form(&["omega^2", "-sqrt(-3)", "omega"])),
        ],
    ));

    entries.push(entry(
        "wild-quartic-minus",
        "wild quartic solution, minus branch",
        4,
        vec![
            (one(), form(&["1", "sqrt(-3)", "1"])),
            (neg_one(), form(&["omega^2", "sqrt(-3)", "omega"])),
            (neg_one(), form(&["1", "-sqrt(-3)", "1"])),
            (one(), form(&["omega^2", "-sqrt(-3)", "omega"])),
        ],
    ));

    entries.push(entry(
        "wild-quintic-plus",
        "wild quintic solution, plus branch",
        5,
        vec![
            (one(), form(&["1", "-i*sqrt(2)", "1"])),
            (sc("i"), form(&["1", "sqrt(2)", "-1"])),
            (neg_one(), form(&["1", "i*sqrt(2)", "1"])),
            (sc("-i"), form(&["1", "-sqrt(2)", "-1"])),
        ],
    ));

    entries.push(entry(
        "wild-quintic-minus",
        "wild quintic solution, minus branch",
        5,
        vec![
            (one(), form(&["1", "i*sqrt(2)", "1"])),
            (sc("-i"), form(&["1", "sqrt(2)", "-1"])),
            (neg_one(), form(&["1", "-i*sqrt(2)", "1"])),
            (sc("i"), form(&["1", "-sqrt(2)", "-1"])),
        ],
    ));

    entries.push(entry(
        "proth-quartic",
        "Proth sum specialization with a square cross term",
        4,
        vec![
            (one(), form(&["1", "0", "1"])),
            (one(), form(&["omega", "0", "omega^2"])),
            (one(), form(&["omega^2", "0", "omega"])),
            (sc("-2"), form(&["0", "sqrt(3)", "0"])),
        ],
    ));

    entries.push(entry(
        "ferrari-quartic",
        "Ferrari ternary quartic, substituted to two variables",
        4,
        vec![
            (one(), form(&["1", "2", "0"])),
            (one(), form(&["0", "-2", "-1"])),
            (one(), form(&["-1", "0", "1"])),
            (sc("-2"), form(&["1", "1", "1"])),
        ],
    ));

    entries.push(entry(
        "desboves-quintic",
        "Desboves parameterization specialized at a square pencil",
        5,
        vec![
            (one(), form(&["1", "2", "-2"])),
            (one(), form(&["-1", "2", "2"])),
            (neg_one(), form(&["i", "2", "2*i"])),
            (neg_one(), form(&["-i", "2", "-2*i"])),
        ],
    ));

    entries
}

static CATALOG: Lazy<Vec<CatalogEntry>> = Lazy::new(build_catalog);

/// All corpus names, in catalog order.
pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

/// Look up a corpus entry by name.
pub fn catalog(name: &str) -> Result<&'static CatalogEntry, BuildError> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| BuildError::UnknownName {
            name: name.to_string(),
            available: catalog_names().join(", "),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dependence::verify_identity;

    #[test]
    fn every_entry_verifies() {
        for e in CATALOG.iter() {
            let out = verify_identity(&e.identity);
            assert!(out.passed(), "catalog entry '{}' failed", e.name);
        }
    }

    #[test]
    fn names_unique() {
        let names = catalog_names();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
    }

    #[test]
    fn unknown_name_lists_catalog() {
        match catalog("nonsense") {
            Err(BuildError::UnknownName { available, .. }) => {
                assert!(available.contains("pythagorean"));
            }
            _ => panic!("expected unknown-name error"),
        }
    }

    #[test]
    fn threefold_guards() {
        assert!(threefold_family(&rat_int(0)).is_err());
        assert!(threefold_family(&rat_int(1)).is_err());
        assert!(threefold_family(&rat_int(-1)).is_err());
        for a in [2i64, 3, 5, -2] {
            let id = threefold_family(&rat_int(a)).unwrap();
            assert!(verify_identity(&id).passed(), "alpha = {}", a);
            let idr = threefold_real_family(&rat_int(a)).unwrap();
            assert!(verify_identity(&idr).passed(), "real alpha = {}", a);
        }
    }

    #[test]
    fn quartic13_has_two_dimensional_power_kernel() {
        let forms = quartic13_forms();
        let set = crate::forms::FormSet::new(forms).unwrap();
        let rep = crate::dependence::power_kernel(&set, 4).unwrap();
        assert_eq!(rep.kernel.len(), 2);
    }

    #[test]
    fn quarcube_quartics_independent_as_forms() {
        let e = catalog("quarcube").unwrap();
        let set = e.identity.form_set();
        let rep = crate::dependence::power_kernel(&set, 1).unwrap();
        assert!(!rep.dependent, "quartics must be linearly independent");
    }
}
