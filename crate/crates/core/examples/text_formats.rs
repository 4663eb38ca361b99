//! Parsing and printing the structure formats, with diagnostics.

use mlab::text::{parse_structure, print_structure, Workspace};

fn main() {
    let src = "algebra idsucc { elements a b c; zero a; succ a->b b->c c->c }";
    let s = parse_structure(src).expect("valid");
    print!("{}", print_structure(&s));

    for bad in [
        "algebra idsucc { elements a; zero a; succ a->b }",
        "algebra idsucc { elements a b; zero a; succ a->b }",
        "algebra idsucc { elements a a; zero a; succ a->a }",
        "algebra (prod id id) { elements a }",
        "coalgebra idsucc { elements x; step x -> }",
    ] {
        println!("{}", parse_structure(bad).unwrap_err());
    }

    let mut ws = Workspace::new();
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .expect("data directory")
        .map(|e| e.expect("entry").path())
        .collect();
    paths.sort();
    for path in paths {
        if path.extension().is_some_and(|e| e == "json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).expect("readable");
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        match ws.load(&name, &text) {
            Ok(kind) => println!("loaded {name} as {}", kind.keyword()),
            Err(d) => println!("{d}"),
        }
    }
}
