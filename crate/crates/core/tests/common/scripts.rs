use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use aqarith::paradox::EqLevel;
use aqarith::semantics::eval_decimal;
use aqarith::sign::{render, RenderStyle};
use aqarith::Aq;

use super::noisy;

struct Line {
    lhs: String,
    level: EqLevel,
    rhs: String,
}

fn text(a: &Aq) -> String {
    render(a, RenderStyle::Minimal).text().to_string()
}

fn small(rng: &mut impl Rng) -> Aq {
    let leaf = |rng: &mut ChaCha8Rng| Aq::num(rng.gen_range(0..=4));
    let mut r = ChaCha8Rng::seed_from_u64(rng.gen());
    match r.gen_range(0..4) {
        0 => leaf(&mut r),
        1 => Aq::add(leaf(&mut r), leaf(&mut r)),
        2 => Aq::sum((0..3).map(|_| leaf(&mut r)).collect()),
        _ => Aq::add(Aq::add(leaf(&mut r), leaf(&mut r)), leaf(&mut r)),
    }
}

fn level(rng: &mut impl Rng) -> EqLevel {
    [EqLevel::Value, EqLevel::Aq, EqLevel::AqBp][rng.gen_range(0..3)]
}

fn count_of(op: &str, arg: &str) -> usize {
    let sign = aqarith::Sign::new(arg);
    if op == "#_bp" {
        aqarith::sign::count_bracket_pairs(&sign).unwrap()
    } else {
        aqarith::sign::count_spaces(&sign)
    }
}

/// A random script. Terms are drawn from a pool of earlier sides so that
/// congruences and chains link up; many lines are still wrong and must be
/// rejected.
pub fn random_script(rng: &mut ChaCha8Rng, ops: &[&str], len: usize) -> String {
    let mut lines: Vec<Line> = Vec::new();
    let mut pool: Vec<String> = Vec::new();
    // operator applications seen so far, as (operator, argument)
    let mut applied: Vec<(String, String)> = Vec::new();
    // applications that already have a defining line
    let mut defined: Vec<(String, String)> = Vec::new();
    let mut out = String::new();
    let fresh = |rng: &mut ChaCha8Rng| noisy(&small(rng), &mut ChaCha8Rng::seed_from_u64(rng.gen()));
    // lines already planned by a bridge
    let mut queued: std::collections::VecDeque<(Line, String)> = Default::default();
    for _ in 0..len {
        let pick = |rng: &mut ChaCha8Rng, pool: &Vec<String>| {
            if !pool.is_empty() && rng.gen_bool(0.6) {
                pool[rng.gen_range(0..pool.len())].clone()
            } else {
                fresh(rng)
            }
        };
        let kind = if !queued.is_empty() {
            9
        } else if lines.is_empty() {
            rng.gen_range(0..3)
        } else {
            [0, 0, 1, 1, 2, 3, 4, 5, 6, 6, 7, 8][rng.gen_range(0..12)]
        };
        let splits: Vec<&&str> = ops.iter().filter(|o| o.ends_with("_s")).collect();
        let counts: Vec<&&str> = ops.iter().filter(|o| o.starts_with('#')).collect();
        let (line, rule) = match kind {
            0 => {
                let l = pick(rng, &pool);
                let (r, lv) = match rng.gen_range(0..3) {
                    0 => (pick(rng, &pool), EqLevel::Value),
                    1 => {
                        let a = aqarith::aq::parse_aq(&l).unwrap();
                        (noisy(&a, &mut ChaCha8Rng::seed_from_u64(rng.gen())), level(rng))
                    }
                    _ => {
                        // same value, usually a different AQ
                        let v = eval_decimal(&aqarith::aq::parse_aq(&l).unwrap()).unwrap();
                        let v: i64 = v.to_string().parse().unwrap();
                        let k = rng.gen_range(0..=4i64);
                        let r = if v - k >= 0 { format!("{k}+{}", v - k) } else { format!("{v}+{k}") };
                        (r, if rng.gen_bool(0.8) { EqLevel::Value } else { level(rng) })
                    }
                };
                let rule = match lv {
                    EqLevel::Value => "arith",
                    EqLevel::Aq => "aq-eq",
                    EqLevel::AqBp => "bp-eq",
                };
                (Line { lhs: l, level: lv, rhs: r }, rule.to_string())
            }
            7 => {
                // the same AQ written differently
                let l = pick(rng, &pool);
                let a = aqarith::aq::parse_aq(&l).unwrap();
                let r = noisy(&a, &mut ChaCha8Rng::seed_from_u64(rng.gen()));
                (Line { lhs: l, level: EqLevel::Aq, rhs: r }, "aq-eq".into())
            }
            9 => queued.pop_front().unwrap(),
            8 if !ops.is_empty() => {
                // a = b, then op(a) and op(b) defined and chained together
                let a = pick(rng, &pool);
                let aq = aqarith::aq::parse_aq(&a).unwrap();
                let (b, lv) = if rng.gen_bool(0.5) {
                    (noisy(&aq, &mut ChaCha8Rng::seed_from_u64(rng.gen())), EqLevel::Aq)
                } else {
                    let v: i64 = eval_decimal(&aq).unwrap().to_string().parse().unwrap();
                    let k = rng.gen_range(0..=v.max(0));
                    (format!("{k}+{}", v - k), if rng.gen_bool(0.8) { EqLevel::Value } else { level(rng) })
                };
                let op = ops[rng.gen_range(0..ops.len())];
                let def = |rng: &mut ChaCha8Rng, arg: &str| {
                    if !rng.gen_bool(0.9) {
                        return rng.gen_range(0..3).to_string();
                    }
                    let x = aqarith::aq::parse_aq(arg).unwrap();
                    match op {
                        "l_s" => text(&aqarith::aq::split_left(&x)),
                        "r_s" => text(&aqarith::aq::split_right(&x)),
                        _ => count_of(op, arg).to_string(),
                    }
                };
                let (da, db) = (def(rng, &a), def(rng, &b));
                let rule = if op.starts_with('#') { "count" } else { "split-def" };
                let n = lines.len();
                let cl = if rng.gen_bool(0.8) { lv } else { level(rng) };
                let (fa, fb) = (format!("{op}({a})"), format!("{op}({b})"));
                queued.push_back((Line { lhs: fa.clone(), level: cl, rhs: fb.clone() }, format!("cong {}", n + 1)));
                queued.push_back((Line { lhs: da.clone(), level: EqLevel::Value, rhs: fa }, rule.into()));
                queued.push_back((Line { lhs: fb, level: EqLevel::Value, rhs: db.clone() }, rule.into()));
                queued.push_back((
                    Line { lhs: da, level: EqLevel::Value, rhs: db },
                    format!("chain {} {} {}", n + 3, n + 2, n + 4),
                ));
                let rule = match lv {
                    EqLevel::Value => "arith",
                    EqLevel::Aq => "aq-eq",
                    EqLevel::AqBp => "bp-eq",
                };
                (Line { lhs: a, level: lv, rhs: b }, rule.into())
            }
            1 if !splits.is_empty() => {
                let seen: Vec<&(String, String)> = applied.iter().filter(|(o, _)| o.ends_with("_s")).collect();
                let open: Vec<&(String, String)> = seen.iter().copied().filter(|x| !defined.contains(x)).collect();
                let seen = if open.is_empty() { seen } else { open };
                let (op, arg) = if !seen.is_empty() && rng.gen_bool(0.8) {
                    let (o, a) = seen[rng.gen_range(0..seen.len())];
                    (o.as_str(), a.clone())
                } else {
                    (*splits[rng.gen_range(0..splits.len())], pick(rng, &pool))
                };
                defined.push((op.to_string(), arg.clone()));
                let a = aqarith::aq::parse_aq(&arg).unwrap();
                let part = if op == "l_s" { aqarith::aq::split_left(&a) } else { aqarith::aq::split_right(&a) };
                let part = if rng.gen_bool(0.85) { text(&part) } else { pick(rng, &pool) };
                let lv = if rng.gen_bool(0.7) { EqLevel::Value } else { EqLevel::Aq };
                let (l, r) = (format!("{op}({arg})"), part);
                let (l, r) = if rng.gen_bool(0.5) { (l, r) } else { (r, l) };
                (Line { lhs: l, level: lv, rhs: r }, "split-def".into())
            }
            2 if !counts.is_empty() => {
                let seen: Vec<&(String, String)> = applied.iter().filter(|(o, _)| o.starts_with('#')).collect();
                let open: Vec<&(String, String)> = seen.iter().copied().filter(|x| !defined.contains(x)).collect();
                let seen = if open.is_empty() { seen } else { open };
                let (op, arg) = if !seen.is_empty() && rng.gen_bool(0.8) {
                    let (o, a) = seen[rng.gen_range(0..seen.len())];
                    (o.as_str(), a.clone())
                } else {
                    (*counts[rng.gen_range(0..counts.len())], pick(rng, &pool))
                };
                defined.push((op.to_string(), arg.clone()));
                let n = if rng.gen_bool(0.85) { count_of(op, &arg) } else { rng.gen_range(0..3) };
                let (l, r) = (format!("{op}({arg})"), n.to_string());
                let (l, r) = if rng.gen_bool(0.5) { (l, r) } else { (r, l) };
                (Line { lhs: l, level: EqLevel::Value, rhs: r }, "count".into())
            }
            3 | 4 if !lines.is_empty() && !ops.is_empty() => {
                // pure premises whose sides are written differently
                let pure: Vec<usize> = (0..lines.len())
                    .filter(|&i| !lines[i].lhs.contains('_') && !lines[i].rhs.contains('_') && lines[i].lhs != lines[i].rhs)
                    .collect();
                let k = if pure.is_empty() { rng.gen_range(0..lines.len()) } else { pure[rng.gen_range(0..pure.len())] };
                let p = &lines[k];
                let op = ops[rng.gen_range(0..ops.len())];
                let lv = if rng.gen_bool(0.7) { p.level } else { level(rng) };
                let l = Line { lhs: format!("{op}({})", p.lhs), level: lv, rhs: format!("{op}({})", p.rhs) };
                (l, format!("cong {}", k + 1))
            }
            5 if !lines.is_empty() => {
                let k = rng.gen_range(0..lines.len());
                let p = &lines[k];
                (Line { lhs: p.rhs.clone(), level: p.level, rhs: p.lhs.clone() }, format!("sym {}", k + 1))
            }
            _ if !lines.is_empty() => {
                // walk along claims that share an endpoint, stopping at a
                // plain term when one is reached
                let mixed: Vec<usize> = (0..lines.len())
                    .filter(|&i| lines[i].lhs.contains('_') != lines[i].rhs.contains('_'))
                    .collect();
                let first = if !mixed.is_empty() && rng.gen_bool(0.7) {
                    mixed[rng.gen_range(0..mixed.len())]
                } else {
                    rng.gen_range(0..lines.len())
                };
                let (mut start, mut cur) = (lines[first].lhs.clone(), lines[first].rhs.clone());
                if start.contains('_') || rng.gen_bool(0.3) {
                    std::mem::swap(&mut start, &mut cur);
                }
                let mut used = vec![first + 1];
                let mut lv = lines[first].level;
                for _ in 0..5 {
                    if !cur.contains('_') && rng.gen_bool(0.7) {
                        break;
                    }
                    let next: Vec<usize> = (0..lines.len())
                        .filter(|&i| !used.contains(&(i + 1)) && (lines[i].lhs == cur || lines[i].rhs == cur))
                        .collect();
                    if next.is_empty() {
                        break;
                    }
                    let i = next[rng.gen_range(0..next.len())];
                    cur = if lines[i].lhs == cur { lines[i].rhs.clone() } else { lines[i].lhs.clone() };
                    lv = lv.min(lines[i].level);
                    used.push(i + 1);
                }
                if rng.gen_bool(0.2) {
                    lv = level(rng);
                }
                let nums: Vec<String> = used.iter().map(|k| k.to_string()).collect();
                (Line { lhs: start, level: lv, rhs: cur }, format!("chain {}", nums.join(" ")))
            }
            _ => {
                let a = pick(rng, &pool);
                let l = Line { lhs: a.clone(), level: EqLevel::Value, rhs: a };
                (l, "arith".into())
            }
        };
        out.push_str(&format!("{} {} {} BY {rule}\n", line.lhs, line.level.symbol(), line.rhs));
        for side in [&line.lhs, &line.rhs] {
            if !side.contains('_') {
                if !pool.contains(side) {
                    pool.push(side.clone());
                }
            } else if let Some((op, rest)) = side.split_once('(') {
                let arg = rest[..rest.len() - 1].to_string();
                if !arg.contains('_') {
                    applied.push((op.to_string(), arg));
                }
            }
        }
        lines.push(line);
    }
    out
}

