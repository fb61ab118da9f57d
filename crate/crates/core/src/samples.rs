//! Small named categories used throughout the tests and the bundled corpus.

use crate::fincat::{ArrowDecl, CategoryPresentation, ComposeEntry, FinCat};

fn build(p: CategoryPresentation) -> FinCat {
    FinCat::from_presentation(&p).unwrap_or_else(|e| panic!("sample `{}` is invalid: {e}", p.name))
}

pub fn terminal() -> FinCat {
    FinCat::terminal("One")
}

/// `X --f--> Y`.
pub fn walking_arrow() -> FinCat {
    build(CategoryPresentation {
        name: "Two".into(),
        objects: vec!["X".into(), "Y".into()],
        arrows: vec![ArrowDecl::new("f", "X", "Y")],
        ..Default::default()
    })
}

/// `X --f--> Y --g--> Z` with `g . f = gf`.
pub fn composable_pair() -> FinCat {
    build(CategoryPresentation {
        name: "Three".into(),
        objects: vec!["X".into(), "Y".into(), "Z".into()],
        arrows: vec![
            ArrowDecl::new("f", "X", "Y"),
            ArrowDecl::new("g", "Y", "Z"),
            ArrowDecl::new("gf", "X", "Z"),
        ],
        compose: vec![ComposeEntry::new("g", "f", "gf")],
        ..Default::default()
    })
}

/// Cyclic group of order `n` on one object `*`, generator `r`, elements
/// `id_*`, `r`, `r2`, ... (`s` for `n = 2`).
pub fn cyclic(n: usize) -> FinCat {
    assert!(n >= 1);
    let name = |k: usize| match (k, n) {
        (0, _) => "id_*".to_string(),
        (1, 2) => "s".to_string(),
        (1, _) => "r".to_string(),
        (k, _) => format!("r{k}"),
    };
    let mut p = CategoryPresentation { name: format!("Z{n}"), objects: vec!["*".into()], ..Default::default() };
    for k in 1..n {
        p.arrows.push(ArrowDecl::new(name(k), "*", "*"));
    }
    for a in 1..n {
        for b in 1..n {
            p.compose.push(ComposeEntry::new(name(a), name(b), name((a + b) % n)));
        }
    }
    build(p)
}

pub fn z2() -> FinCat {
    cyclic(2)
}

pub fn z3() -> FinCat {
    cyclic(3)
}

/// Symmetric group on three letters, elements named by their one-line
/// notation on `{0,1,2}` (`p012` is the identity and is named `id_*`).
pub fn s3() -> FinCat {
    let perms = s3_elements();
    let name = |p: &[usize; 3]| {
        if *p == [0, 1, 2] {
            "id_*".to_string()
        } else {
            format!("p{}{}{}", p[0], p[1], p[2])
        }
    };
    let mut c = CategoryPresentation { name: "S3".into(), objects: vec!["*".into()], ..Default::default() };
    for p in perms.iter().filter(|p| **p != [0, 1, 2]) {
        c.arrows.push(ArrowDecl::new(name(p), "*", "*"));
    }
    for g in perms.iter().filter(|p| **p != [0, 1, 2]) {
        for f in perms.iter().filter(|p| **p != [0, 1, 2]) {
            // (g ∘ f)(i) = g(f(i))
            let h = [g[f[0]], g[f[1]], g[f[2]]];
            c.compose.push(ComposeEntry::new(name(g), name(f), name(&h)));
        }
    }
    build(c)
}

pub fn s3_elements() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

/// The groupoid with exactly one morphism between any two of `n` objects.
pub fn codiscrete(n: usize) -> FinCat {
    let obj = |i: usize| format!("O{i}");
    let mor = |i: usize, j: usize| if i == j { format!("id_O{i}") } else { format!("m{i}{j}") };
    let mut p = CategoryPresentation { name: format!("Codisc{n}"), ..Default::default() };
    for i in 0..n {
        p.objects.push(obj(i));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                p.arrows.push(ArrowDecl::new(mor(i, j), obj(i), obj(j)));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k {
                    p.compose.push(ComposeEntry::new(mor(j, k), mor(i, j), mor(i, k)));
                }
            }
        }
    }
    build(p)
}

/// One object `*` with an idempotent `e`: `e . e = e`.
pub fn idempotent() -> FinCat {
    build(CategoryPresentation {
        name: "Idem".into(),
        objects: vec!["*".into()],
        arrows: vec![ArrowDecl::new("e", "*", "*")],
        compose: vec![ComposeEntry::new("e", "e", "e")],
        ..Default::default()
    })
}

/// One-object table on `{e, a, b}` that fails associativity at `a . a . a`:
/// `a . a = b`, `a . b = a`, `b . a = b`, `b . b = e`.
pub fn non_associative_table() -> CategoryPresentation {
    CategoryPresentation {
        name: "Bad".into(),
        objects: vec!["*".into()],
        arrows: vec![ArrowDecl::new("a", "*", "*"), ArrowDecl::new("b", "*", "*")],
        identities: vec![("*".into(), "e".into())],
        compose: vec![
            ComposeEntry::new("a", "a", "b"),
            ComposeEntry::new("a", "b", "a"),
            ComposeEntry::new("b", "a", "b"),
            ComposeEntry::new("b", "b", "e"),
        ],
    }
}

pub fn all() -> Vec<FinCat> {
    vec![
        terminal(),
        walking_arrow(),
        composable_pair(),
        z2(),
        z3(),
        cyclic(4),
        s3(),
        codiscrete(2),
        codiscrete(3),
        idempotent(),
        z2().product(&z2()),
        walking_arrow().product(&walking_arrow()),
    ]
}
