use fgroup_core::experiments::{build_nonac_witness, build_pocket_element};
use fgroup_core::{word_length, TreePair};

#[test]
fn frozen_witnesses() {
    let text = include_str!("fixtures/witnesses.txt");
    let mut seen = 0;
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let (a, b): (usize, usize) = (f[1].parse().unwrap(), f[2].parse().unwrap());
        let pair = TreePair::parse_pair(f[3]).unwrap();
        let l_n: usize = f[4].parse().unwrap();
        let (built, n) = match f[0] {
            "nonac" => (build_nonac_witness(a, b).unwrap(), a),
            "pocket" => (build_pocket_element(a, b).unwrap(), b),
            other => panic!("unknown fixture kind {other}"),
        };
        assert_eq!(built, pair, "{line}");
        assert_eq!(word_length(&pair, n).unwrap(), l_n, "{line}");
        seen += 1;
    }
    assert_eq!(seen, 5);
}
