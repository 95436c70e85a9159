//! Stock structures used by the tests, the examples and the CLI report.

use super::{FiniteStructure, Signature};

/// `n` elements and no relations at all: the poorest possible language.
pub fn pure_domain(n: usize) -> FiniteStructure {
    FiniteStructure::new(Signature::new(), n)
}

/// Strict order `Less(i, j)` iff `i < j`.
pub fn linear_order(n: usize) -> FiniteStructure {
    let sig = Signature::new().with_relation("Less", 2).unwrap();
    let tuples = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j]));
    FiniteStructure::new(sig, n).with_tuples("Less", tuples).unwrap()
}

/// `P` holds of element 0 and nothing else; unary `Q` and binary `R` are empty.
pub fn one_predicate(n: usize) -> FiniteStructure {
    let sig = Signature::new()
        .with_relation("P", 1)
        .unwrap()
        .with_relation("Q", 1)
        .unwrap()
        .with_relation("R", 2)
        .unwrap();
    FiniteStructure::new(sig, n)
        .with_tuples("P", [vec![0]])
        .unwrap()
}

/// Two points `i`, `-i` and the conjugation relation swapping them.
pub fn conjugation_pair() -> FiniteStructure {
    let sig = Signature::new().with_relation("Conj", 2).unwrap();
    FiniteStructure::new(sig, 2)
        .with_tuples("Conj", [vec![0, 1], vec![1, 0]])
        .unwrap()
        .with_labels(["i", "-i"])
        .unwrap()
}

fn gauss_label(re: usize, im: usize) -> String {
    let signed = |v: usize| -> i32 {
        match v {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    };
    let (r, s) = (signed(re), signed(im));
    let imag = match s {
        1 => "i",
        -1 => "-i",
        _ => "",
    };
    match (r, s) {
        (_, 0) => r.to_string(),
        (0, _) => imag.to_string(),
        (_, 1) => format!("{r}+i"),
        _ => format!("{r}-i"),
    }
}

/// The field of Gaussian integers modulo 3 (nine elements), with ternary
/// addition and multiplication graphs and the binary conjugation graph.
///
/// Element `a + 3b` stands for `a + b·i`. Its automorphism group is
/// `{identity, conjugation}`: a finite stand-in for the complex field, where
/// `i` and `-i` cannot be told apart.
pub fn gaussian_field_mod3() -> FiniteStructure {
    let idx = |a: usize, b: usize| a % 3 + 3 * (b % 3);
    let sig = Signature::new()
        .with_relation("Add", 3)
        .unwrap()
        .with_relation("Mul", 3)
        .unwrap()
        .with_relation("Conj", 2)
        .unwrap();
    let mut s = FiniteStructure::new(sig, 9);
    for x in 0..9 {
        let (a, b) = (x % 3, x / 3);
        s.add_tuple("Conj", vec![x, idx(a, 3 - b)]).unwrap();
        for y in 0..9 {
            let (c, d) = (y % 3, y / 3);
            s.add_tuple("Add", vec![x, y, idx(a + c, b + d)]).unwrap();
            // (a+bi)(c+di) = (ac - bd) + (ad + bc)i
            s.add_tuple("Mul", vec![x, y, idx(a * c + 2 * b * d, a * d + b * c)])
                .unwrap();
        }
    }
    let labels: Vec<String> = (0..9).map(|x| gauss_label(x % 3, x / 3)).collect();
    s.with_labels(labels).unwrap()
}

/// Four elements, `P = {0, 1}`, and `=` read as the equivalence with classes
/// `{0, 1}` and `{2, 3}`. The equivalence is a congruence for `P`, so
/// substitution of identicals holds in this language; any richer language
/// that tells 0 from 1 breaks it.
pub fn congruence_masking() -> FiniteStructure {
    let sig = Signature::new()
        .with_relation("P", 1)
        .unwrap()
        .with_relation("E", 2)
        .unwrap();
    let classes = [[0, 1], [2, 3]];
    let eq = classes
        .iter()
        .flat_map(|c| c.iter().flat_map(move |&x| c.iter().map(move |&y| vec![x, y])));
    let mut s = FiniteStructure::new(sig, 4)
        .with_tuples("P", [vec![0], vec![1]])
        .unwrap()
        .with_tuples("E", eq.collect::<Vec<_>>())
        .unwrap();
    s.designate_equality("E").unwrap();
    s
}

/// Adds a diagonal relation `Eq` and designates it as equality.
pub fn with_diagonal_equality(s: &FiniteStructure) -> FiniteStructure {
    let mut out = s.clone();
    let name = out.signature().fresh_name("Eq");
    let diag: Vec<Vec<usize>> = (0..s.size()).map(|e| vec![e, e]).collect();
    out.extend_relation(&name, 2, diag).unwrap();
    out.designate_equality(&name).unwrap();
    out
}

/// Membership `In` over three elements where 0 and 1 both have no members
/// and 2 = {0}; equality is the diagonal. Extensionality fails for (0, 1).
pub fn twin_empties() -> FiniteStructure {
    let sig = Signature::new().with_relation("In", 2).unwrap();
    let mut s = FiniteStructure::new(sig, 3)
        .with_tuples("In", [vec![0, 2]])
        .unwrap();
    s.designate_membership("In").unwrap();
    with_diagonal_equality(&s)
}

/// Membership `In` for the sets ∅, {∅}, {{∅}}, {∅,{∅}} with diagonal equality.
/// Extensional, so all three identity axioms hold.
pub fn small_von_neumann() -> FiniteStructure {
    let sig = Signature::new().with_relation("In", 2).unwrap();
    let mut s = FiniteStructure::new(sig, 4)
        .with_tuples("In", [vec![0, 1], vec![1, 2], vec![0, 3], vec![1, 3]])
        .unwrap()
        .with_labels(["0", "{0}", "{{0}}", "{0,{0}}"])
        .unwrap();
    s.designate_membership("In").unwrap();
    with_diagonal_equality(&s)
}
