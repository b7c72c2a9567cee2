//! Wrong inferences a practised calculator learns to avoid, each with a
//! counterexample found by plain integer search.

/// A tempting but false general claim about integers.
pub struct KnownMistake {
    pub name: &'static str,
    pub statement: &'static str,
    /// `Some(description)` when `(x, y, z)` violates the claim.
    violation: fn(i64, i64, i64) -> Option<String>,
}

impl KnownMistake {
    /// The first violation with `|x|, |y|, |z| <= bound`, in order of
    /// increasing magnitude.
    pub fn counterexample(&self, bound: i64) -> Option<String> {
        let range = || (0..=bound).flat_map(|v| if v == 0 { vec![0] } else { vec![v, -v] });
        for x in range() {
            for y in range() {
                for z in range() {
                    if let Some(w) = (self.violation)(x, y, z) {
                        return Some(w);
                    }
                }
            }
        }
        None
    }
}

pub fn known_mistakes() -> Vec<KnownMistake> {
    vec![
        KnownMistake {
            name: "square-even",
            statement: "x·x is always even",
            violation: |x, _, _| {
                let sq = x * x;
                (sq % 2 != 0).then(|| format!("x = {x}: x·x = {sq} is odd"))
            },
        },
        KnownMistake {
            name: "times-opposite",
            statement: "x·(-x) = 0",
            violation: |x, _, _| {
                let p = x * -x;
                (p != 0).then(|| format!("x = {x}: x·(-x) = {p}"))
            },
        },
        KnownMistake {
            name: "false-association",
            statement: "x·(y+z) = (x·y)+z",
            violation: |x, y, z| {
                let (l, r) = (x * (y + z), x * y + z);
                (l != r).then(|| format!("x = {x}, y = {y}, z = {z}: {l} vs {r}"))
            },
        },
        KnownMistake {
            name: "sum-exceeds",
            statement: "x+y > x",
            violation: |x, y, _| {
                (x + y <= x).then(|| format!("x = {x}, y = {y}: x+y = {}", x + y))
            },
        },
    ]
}
