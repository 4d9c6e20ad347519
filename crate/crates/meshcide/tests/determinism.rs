use meshcide::json::{parse_pattern, pattern};
use meshcide::run;
use meshcide_core::{Mesh, MeshPattern, Permutations};

#[test]
fn json_round_trip_up_to_length_three() {
    for k in 1..=3 {
        for p in Permutations::new(k) {
            for m in Mesh::all(k) {
                let pi = MeshPattern::new(p.clone(), m).unwrap();
                assert_eq!(parse_pattern(&pattern(&pi).to_string()).unwrap(), pi);
            }
        }
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let cases: [&[&str]; 3] = [
        &["partition", "12", "--max-n", "6", "--json"],
        &["partition", "21", "--max-n", "6", "--no-gamma"],
        &["coincident", "231:(3,2)", "231:(1,3)(3,2)", "--json"],
    ];
    for args in cases {
        let outputs: Vec<String> = ["1", "2", "4"]
            .iter()
            .map(|t| {
                let out = run(["meshcide"]
                    .iter()
                    .chain(args)
                    .chain(&["--threads", t])
                    .copied());
                assert_eq!(out.code, 0, "{}", out.stderr);
                out.stdout
            })
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}
