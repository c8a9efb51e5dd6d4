//! The `"[s1,..,sd;a1,..,ad]@N"` index literal grammar: round trips,
//! whitespace handling, the level-resolution rules, error positions, and the
//! level-2 bar notation.

use qmz::index::{bar_notation, parse_full_index, parse_index, render_index, resolve_level};
use qmz::qseries::MdfIndex;

/// Minimal xorshift so the round-trip sweep is deterministic without a
/// dependency on an RNG crate.
struct XorShift(u64);
impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

#[test]
fn parse_and_render_round_trip() {
    let mut rng = XorShift(0x1de3_5eed);
    for _ in 0..1000 {
        let level = 1 + rng.below(6) as u32;
        let depth = 1 + rng.below(4) as usize;
        let s: Vec<u32> = (0..depth).map(|_| 1 + rng.below(9) as u32).collect();
        let alpha: Vec<u32> = (0..depth).map(|_| rng.below(level as u64) as u32).collect();
        let idx = MdfIndex::new(level, s.clone(), alpha.clone()).unwrap();
        let text = render_index(&idx);
        let back = parse_full_index(&text, None).unwrap();
        assert_eq!(back, idx, "round trip failed on {text}");
        // The flag route must agree when no suffix is present.
        let bare = text.split('@').next().unwrap();
        assert_eq!(parse_full_index(bare, Some(level)).unwrap(), idx);
    }
}

#[test]
fn whitespace_is_ignored() {
    let a = parse_index("[2,1;0,1]@2").unwrap();
    let b = parse_index(" [ 2 , 1 ; 0 , 1 ] @ 2 ").unwrap();
    assert_eq!(a, b);
    assert_eq!(a.s, vec![2, 1]);
    assert_eq!(a.alpha, vec![0, 1]);
    assert_eq!(a.level, Some(2));
}

#[test]
fn error_cases_carry_positions() {
    // Arity mismatch.
    let e = parse_index("[1,2;0]@2").unwrap_err();
    assert!(e.contains("arity mismatch"), "{e}");
    // Missing bracket / separator.
    assert!(parse_index("2,1;0,1").unwrap_err().contains("'['"));
    assert!(parse_index("[2,1;0,1").unwrap_err().contains("']'"));
    assert!(parse_index("[2,1]").unwrap_err().contains("';'"));
    // Bad integers and empty lists.
    assert!(parse_index("[2,x;0,1]").unwrap_err().contains("bad integer"));
    assert!(parse_index("[;]").unwrap_err().contains("empty list"));
    // Trailing garbage and bad level.
    assert!(parse_index("[2;1]z").unwrap_err().contains("trailing"));
    assert!(parse_index("[2;1]@0").unwrap_err().contains("bad level"));
    // Color out of range is caught by index validation.
    assert!(parse_full_index("[2;5]@2", None).is_err());
}

#[test]
fn level_resolution_rules() {
    let p = parse_index("[2;1]@2").unwrap();
    assert_eq!(resolve_level(&p, None).unwrap(), 2);
    assert_eq!(resolve_level(&p, Some(2)).unwrap(), 2);
    let e = resolve_level(&p, Some(3)).unwrap_err();
    assert!(e.contains("conflicting levels"), "{e}");
    let bare = parse_index("[2;1]").unwrap();
    assert_eq!(resolve_level(&bare, Some(3)).unwrap(), 3);
    assert!(resolve_level(&bare, None).unwrap_err().contains("no level"));
}

#[test]
fn bar_notation_level_two_only() {
    let idx = MdfIndex::new(2, vec![2, 1], vec![0, 1]).unwrap();
    assert_eq!(bar_notation(&idx).unwrap(), "[2,1bar]");
    let idx = MdfIndex::new(2, vec![3], vec![1]).unwrap();
    assert_eq!(bar_notation(&idx).unwrap(), "[3bar]");
    let idx = MdfIndex::new(3, vec![2], vec![1]).unwrap();
    assert!(bar_notation(&idx).is_none());
}
