use persmod::constructions::{exterior_power, hom, hom_element, kernel};
use persmod::io::{parse_complex, parse_morphism, parse_presentation};
use persmod::streaming::stream;
use persmod::torsion::{relative_complex, relative_persistence, torsion_stages};
use persmod::{persistent_homology, Field, FilteredComplex, Simplex};

const Q: Field = Field::Rationals;

fn lines(b: &persmod::Barcode) -> Vec<String> {
    b.intervals().iter().map(|i| i.to_string()).collect()
}

fn two_triangles() -> FilteredComplex {
    parse_complex("0;1\n1;1\n2;2\n3;2\n0 1;2\n1 2;2\n0 3;3\n2 3;3\n0 2;4\n0 1 2;5\n0 2 3;6\n")
        .unwrap()
}

#[test]
fn two_triangles_barcode() {
    for f in [Q, Field::Prime(2), Field::Prime(7)] {
        let b = persistent_homology(&two_triangles(), f).unwrap();
        assert_eq!(
            lines(&b),
            ["0 1 2", "0 1 inf", "0 2 2", "0 2 3", "1 3 6", "1 4 5"]
        );
    }
}

#[test]
fn path_complex() {
    let c = parse_complex("0 ; 1\n1 ; 2\n0 1 ; 3\n").unwrap();
    assert_eq!(
        lines(&persistent_homology(&c, Q).unwrap()),
        ["0 1 inf", "0 2 3"]
    );
}

#[test]
fn five_generator_module() {
    let text = "gen x 1\ngen y 1\ngen z 2\ngen u 3\ngen v 3\n\
        rel 1t^0*z + 1t^1*x + 1t^1*y\nrel 1t^0*u + 1t^2*x + 1t^2*y\n\
        rel 1t^1*v + 1t^2*z + 1t^3*y\nrel 1t^1*u + 1t^2*z + 1t^3*y\n";
    let p = parse_presentation(text, Q).unwrap();
    let s = p.snf();
    let mut exps: Vec<u32> = s.diagonal.iter().map(|(_, _, m)| m.exponent()).collect();
    exps.sort_unstable();
    assert_eq!(exps, [0, 0, 1, 3]);
    assert_eq!(s.free_rows.len(), 1);
    // new generators are the columns of S^-1
    let y_new = s.row_change_inv.column_element(1);
    assert_eq!(y_new.display(p.gens()).to_string(), "2t^0*x + 1t^0*y");
    let v_new = s.row_change_inv.column_element(4);
    assert_eq!(v_new.display(p.gens()).to_string(), "-1t^2*x + 1t^0*v");
    let m = p.minimize(false);
    assert_eq!(m.gens().labels(), ["x", "y'", "v'"]);
}

#[test]
fn relative_two_simplex() {
    let text = "0;0;13\n1;1;12\n2;2;11\n0 1;3;10\n0 2;4;9\n1 2;5;8\n0 1 2;6;7\n";
    let c = parse_complex(text).unwrap();
    let stages = torsion_stages(&relative_complex(&c, Q).unwrap()).unwrap();
    let mut degrees: Vec<i64> = stages
        .iter()
        .flat_map(|s| s.kernel.gens().degrees().to_vec())
        .collect();
    degrees.sort_unstable();
    assert_eq!(degrees, [0, 1, 2, 5, 10, 12, 13]);
    let b = relative_persistence(&c, Q).unwrap();
    assert_eq!(lines(&b), ["0 0 11", "0 1 3", "0 2 4", "1 5 6"]);
}

#[test]
fn hom_between_bar_modules() {
    let m = parse_presentation("gen x 1\ngen y 2\nrel 1t^3*x\nrel 1t^4*y", Q).unwrap();
    let n = parse_presentation(
        "gen u 1\ngen v 1\ngen w 2\nrel 1t^2*u\nrel 1t^1*v\nrel 1t^4*w",
        Q,
    )
    .unwrap();
    let h = hom(&m, &n).unwrap();
    assert_eq!(
        h.gens().labels(),
        ["x*@u", "x*@v", "x*@w", "y*@u", "y*@v", "y*@w"]
    );
    let exps: Vec<i64> = (0..6)
        .map(|j| h.rels().degree(j) - h.gens().degree(j))
        .collect();
    assert_eq!(exps, [2, 1, 3, 2, 1, 4]);

    let f = parse_morphism(
        "[source]\ngen x 1\ngen y 2\nrel 1t^3*x\nrel 1t^4*y\n\
         [target]\ngen u 1\ngen v 1\ngen w 2\nrel 1t^2*u\nrel 1t^1*v\nrel 1t^4*w\n\
         [map]\nmap x -> 1t^0*u + 1t^0*v\nmap y -> 1t^1*u + 1t^0*w\n",
        Q,
    )
    .unwrap();
    let e = hom_element(&f).unwrap();
    assert_eq!(e.degree(), 0);
    assert_eq!(
        e.display(h.gens()).to_string(),
        "1t^0*x*@u + 1t^0*x*@v + 1t^1*y*@u + 1t^0*y*@w"
    );
    assert_eq!(
        kernel(&f).unwrap().0.barcode().without_ephemeral().pairs(),
        [(3, Some(4))]
    );
}

#[test]
fn exterior_square_discriminates() {
    for f in [Q, Field::Prime(5)] {
        for (b, expected) in [(2, 3), (0, 4)] {
            let text = format!("gen x 1\ngen y 2\nrel 1t^4*x + {b}t^3*y\nrel 3t^9*x + 1t^8*y\n");
            let text = text.replace(" + 0t^3*y", "");
            let m = parse_presentation(&text, f).unwrap();
            let w = exterior_power(&m, 2).unwrap();
            assert_eq!(w.gens().len(), 1);
            assert_eq!(
                w.rels().degree(0) - w.gens().degree(0),
                expected,
                "b = {b} over {f}"
            );
        }
    }
}

#[test]
fn stream_repairs_pairing() {
    let order = [
        (vec![1], 1),
        (vec![2], 4),
        (vec![1, 2], 6),
        (vec![3], 2),
        (vec![1, 3], 3),
        (vec![2, 3], 5),
    ];
    let (s, deltas) = stream(Q, order.iter().cloned()).unwrap();
    assert!(s.labelled_pairs().contains(&("s2".into(), "s2_3".into())));
    assert_eq!(deltas[5].removed.len(), 1);
    assert_eq!(deltas[5].removed[0].to_string(), "0 4 6");

    let mut all = order.to_vec();
    all.push((vec![1, 2, 3], 7));
    let (s, _) = stream(Q, all.iter().cloned()).unwrap();
    let sorted = FilteredComplex::new(
        all.into_iter()
            .map(|(v, f)| Simplex::new(v, f, None))
            .collect(),
    )
    .unwrap();
    assert_eq!(
        s.current_barcode(),
        persistent_homology(&sorted, Q).unwrap()
    );
    assert_eq!(
        lines(&s.current_barcode()),
        ["0 1 inf", "0 2 3", "0 4 5", "1 6 7"]
    );
}
