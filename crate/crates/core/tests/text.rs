use proptest::prelude::*;

use mlab::structures::{PointedSuccAlgebra, StepCoalgebra};
use mlab::text::{parse_structure, print_algebra, print_coalgebra, Code, Structure, Workspace};

fn algebra() -> impl Strategy<Value = PointedSuccAlgebra> {
    (1usize..6).prop_flat_map(|n| {
        (0..n, prop::collection::vec(0..n, n)).prop_map(|(z, s)| PointedSuccAlgebra::numbered(z, s).unwrap())
    })
}

fn coalgebra() -> impl Strategy<Value = StepCoalgebra> {
    (0usize..6).prop_flat_map(|n| {
        prop::collection::vec(prop::option::of(0..n.max(1)), n)
            .prop_map(move |t| StepCoalgebra::numbered(t.into_iter().map(|v| v.filter(|&x| x < n)).collect()).unwrap())
    })
}

proptest! {
    #[test]
    fn algebras_round_trip(a in algebra()) {
        let text = print_algebra(&a);
        let Structure::Algebra(back) = parse_structure(&text).unwrap() else { panic!("not an algebra") };
        prop_assert_eq!(back.zero(), a.zero());
        prop_assert_eq!(back.succ_table(), a.succ_table());
        prop_assert_eq!(print_algebra(&back), text);
    }

    #[test]
    fn coalgebras_round_trip(c in coalgebra()) {
        let text = print_coalgebra(&c);
        let Structure::Coalgebra(back) = parse_structure(&text).unwrap() else { panic!("not a coalgebra") };
        prop_assert_eq!(back.step_table(), c.step_table());
    }

    #[test]
    fn clause_order_does_not_matter(a in algebra()) {
        let text = print_algebra(&a);
        let inner = text.trim().trim_start_matches("algebra idsucc {").trim_end_matches('}');
        let mut clauses: Vec<&str> = inner.split(';').map(str::trim).collect();
        clauses.reverse();
        let shuffled = format!("algebra idsucc {{ {} }}", clauses.join("; "));
        let Structure::Algebra(back) = parse_structure(&shuffled).unwrap() else { panic!("not an algebra") };
        prop_assert_eq!(back.succ_table(), a.succ_table());
    }
}

#[test]
fn sample_coalgebra_file() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/bracket1.coalg")).unwrap();
    let Structure::Coalgebra(c) = parse_structure(&text).unwrap() else {
        panic!("not a coalgebra")
    };
    assert_eq!(c.step_table(), &[None, Some(0)]);
}

#[test]
fn the_two_chain_prints_exactly() {
    let a = PointedSuccAlgebra::numbered(0, vec![1, 2, 2]).unwrap();
    assert_eq!(
        print_algebra(&a),
        "algebra idsucc { elements 0 1 2; zero 0; succ 0->1 1->2 2->2 }\n"
    );
}

#[test]
fn diagnostics_carry_positions() {
    let cases = [
        (
            "algebra idsucc { elements a; zero a;\n succ a->b }",
            Code::UnknownElement,
            2,
            10,
        ),
        ("algebra idsucc { elements a; zero a }", Code::NonTotal, 1, 37),
        (
            "algebra idsucc { elements a a; zero a; succ a->a }",
            Code::DuplicateName,
            1,
            29,
        ),
        ("algebra (prod id id) { }", Code::UnsupportedFunctor, 1, 9),
        ("algebra idsucc { elements a; zero a; succ a-> }", Code::Syntax, 1, 44),
    ];
    for (text, code, line, col) in cases {
        let d = parse_structure(text).unwrap_err();
        assert_eq!((d.code, d.line, d.col), (code, line, col), "{text}: {d}");
    }
}

#[test]
fn workspace_rejects_duplicate_names_per_kind() {
    let mut ws = Workspace::default();
    ws.load("x", "algebra idsucc { elements 0; zero 0; succ 0->0 }")
        .unwrap();
    ws.load("x", "coalgebra idsucc { elements 0; step 0->stop }").unwrap();
    let d = ws
        .load("x", "algebra idsucc { elements 0; zero 0; succ 0->0 }")
        .unwrap_err();
    assert_eq!(d.code, Code::DuplicateName);
    assert_eq!(ws.len(), 2);
}
