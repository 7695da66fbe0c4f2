use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Braid on `strands` strands. Letter `i` is the positive generator `sigma_i`,
/// letter `-i` its inverse; `1 <= |i| <= strands - 1`.
///
/// In the positive generator the strand entering at position `i` (counting
/// from 1 on the left) passes over the strand entering at `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    word: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    strands: usize,
    word: Vec<i32>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = Error;
    fn try_from(r: RawBraid) -> Result<Self> {
        BraidWord::new(r.strands, r.word)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(b: BraidWord) -> Self {
        RawBraid { strands: b.strands, word: b.word }
    }
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("a braid needs at least one strand".into()));
        }
        if let Some(&g) = word.iter().find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands) {
            return Err(Error::InvalidBraid(format!("generator {g} out of range for {strands} strands")));
        }
        Ok(BraidWord { strands, word })
    }

    pub(crate) fn new_unchecked(strands: usize, word: Vec<i32>) -> Self {
        debug_assert!(BraidWord::new(strands, word.clone()).is_ok());
        BraidWord { strands, word }
    }

    /// Identity braid on `n` strands; its closure is the `n`-component unlink.
    pub fn identity(n: usize) -> Self {
        BraidWord::new_unchecked(n.max(1), Vec::new())
    }

    pub fn unknot() -> Self {
        BraidWord::identity(1)
    }

    /// `sigma_1^2`, whose closure is the positive Hopf link.
    pub fn hopf() -> Self {
        BraidWord::new_unchecked(2, vec![1, 1])
    }

    pub fn trefoil() -> Self {
        BraidWord::new_unchecked(2, vec![1, 1, 1])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn writhe(&self) -> i32 {
        self.word.iter().map(|g| g.signum()).sum()
    }

    /// Bottom position reached by the strand entering at each top position.
    pub fn permutation(&self) -> Vec<usize> {
        (0..self.strands)
            .map(|start| {
                self.word.iter().fold(start, |p, &g| {
                    let i = g.unsigned_abs() as usize;
                    if p + 1 == i {
                        i
                    } else if p == i {
                        i - 1
                    } else {
                        p
                    }
                })
            })
            .collect()
    }

    /// Components of the closure as sets of top positions, ordered by their
    /// smallest position.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut out = Vec::new();
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = perm[p];
            }
            cycle.sort_unstable();
            out.push(cycle);
        }
        out
    }

    /// Component index of each top position.
    pub fn component_of_position(&self) -> Vec<usize> {
        let mut out = vec![0; self.strands];
        for (c, positions) in self.components().iter().enumerate() {
            for &p in positions {
                out[p] = c;
            }
        }
        out
    }

    /// Sum of crossing signs between strands of the same component, per component.
    pub fn self_writhes(&self) -> Vec<i32> {
        let comp = self.component_of_position();
        let ncomp = comp.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![0; ncomp];
        // which top strand currently sits at each position
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize;
            let (l, r) = (at[i - 1], at[i]);
            if comp[l] == comp[r] {
                out[comp[l]] += g.signum();
            }
            at.swap(i - 1, i);
        }
        out
    }

    /// Conjugate by `g`: the word `g w g^(-1)`.
    pub fn conjugate_by(&self, g: &[i32]) -> Result<Self> {
        let mut word: Vec<i32> = g.to_vec();
        word.extend_from_slice(&self.word);
        word.extend(g.iter().rev().map(|x| -x));
        BraidWord::new(self.strands, word)
    }

    /// Positive stabilisation: append a new strand and the letter `sigma_n`.
    pub fn stabilize(&self, sign: i32) -> Self {
        let mut word = self.word.clone();
        word.push(self.strands as i32 * sign.signum());
        BraidWord::new_unchecked(self.strands + 1, word)
    }
}

/// Result of [`markov_normalize`]: the closure of the input equals
/// `a^a_power` times the closure of `braid`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub braid: BraidWord,
    pub a_power: i32,
}

/// Remove adjacent inverse pairs, cyclically.
pub(crate) fn cyclic_free_reduce(word: &mut Vec<i32>) {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &g in word.iter() {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == -out[end - 1] {
        start += 1;
        end -= 1;
    }
    *word = out[start..end].to_vec();
}

/// Free reduction plus repeated destabilisation of the last strand while it
/// carries exactly one crossing.
pub fn markov_normalize(b: &BraidWord) -> Normalized {
    let mut n = b.strands;
    let mut word = b.word.clone();
    let mut a_power = 0;
    loop {
        cyclic_free_reduce(&mut word);
        if n < 2 {
            break;
        }
        let top = (n - 1) as i32;
        let hits: Vec<usize> = (0..word.len()).filter(|&k| word[k].abs() == top).collect();
        if hits.len() != 1 {
            break;
        }
        let k = hits[0];
        a_power += word[k].signum();
        word.rotate_left(k + 1);
        word.pop();
        n -= 1;
    }
    Normalized { braid: BraidWord::new_unchecked(n, word), a_power }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; w=", self.strands)?;
        for (i, g) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Accepts `n=2; w=1,1` or `{"strands":2,"word":[1,1]}`.
impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            return serde_json::from_str::<RawBraid>(t)
                .map_err(|e| Error::parse(e.column().saturating_sub(1), e.to_string()))
                .and_then(BraidWord::try_from);
        }
        let mut strands = None;
        let mut word = None;
        let mut offset = 0;
        for field in s.split(';') {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::parse(offset, "expected `key=value`"))?;
            let value_pos = offset + key.len() + 1;
            match key.trim() {
                "n" => {
                    let n = value
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| Error::parse(value_pos, "strand count must be a positive integer"))?;
                    strands = Some(n);
                }
                "w" => {
                    let mut letters = Vec::new();
                    if !value.trim().is_empty() {
                        let mut pos = value_pos;
                        for piece in value.split(',') {
                            let g = piece
                                .trim()
                                .parse::<i32>()
                                .map_err(|_| Error::parse(pos, format!("`{}` is not an integer", piece.trim())))?;
                            letters.push(g);
                            pos += piece.len() + 1;
                        }
                    }
                    word = Some(letters);
                }
                other => return Err(Error::parse(offset, format!("unknown field `{other}`"))),
            }
            offset += field.len() + 1;
        }
        let strands = strands.ok_or_else(|| Error::parse(0, "missing `n=`"))?;
        BraidWord::new(strands, word.unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(BraidWord::new(2, vec![1, -1]).is_ok());
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(0, vec![]).is_err());
    }

    #[test]
    fn writhe_and_components() {
        let h = BraidWord::hopf();
        assert_eq!(h.writhe(), 2);
        assert_eq!(h.components(), vec![vec![0], vec![1]]);
        assert_eq!(h.self_writhes(), vec![0, 0]);
        let t = BraidWord::trefoil();
        assert_eq!(t.components(), vec![vec![0, 1]]);
        assert_eq!(t.self_writhes(), vec![3]);
        let b = BraidWord::new(3, vec![1, -2]).unwrap();
        assert_eq!(b.permutation(), vec![2, 0, 1]);
    }

    #[test]
    fn markov_examples() {
        let b = BraidWord::new(2, vec![1, -1]).unwrap();
        assert_eq!(markov_normalize(&b).braid, BraidWord::identity(2));
        let b = BraidWord::new(2, vec![1]).unwrap();
        assert_eq!(markov_normalize(&b), Normalized { braid: BraidWord::unknot(), a_power: 1 });
        let b = BraidWord::trefoil();
        assert_eq!(markov_normalize(&b), Normalized { braid: b.clone(), a_power: 0 });
        let b = BraidWord::new(3, vec![1, -2, 1]).unwrap();
        let n = markov_normalize(&b);
        assert_eq!(n.a_power, -1);
        assert_eq!(n.braid, BraidWord::new(2, vec![1, 1]).unwrap());
    }

    #[test]
    fn parse_and_render() {
        let b: BraidWord = "n=2; w=1,1".parse().unwrap();
        assert_eq!(b, BraidWord::hopf());
        assert_eq!(b.to_string(), "n=2; w=1,1");
        let j: BraidWord = r#"{"strands":3,"word":[1,-2]}"#.parse().unwrap();
        assert_eq!(j.word(), &[1, -2]);
        assert_eq!("n=1; w=".parse::<BraidWord>().unwrap(), BraidWord::unknot());
        assert!("n=2; w=1,x".parse::<BraidWord>().is_err());
        assert!("n=2; w=3".parse::<BraidWord>().is_err());
        assert!(r#"{"strands":2,"word":[5]}"#.parse::<BraidWord>().is_err());
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"strands":2,"word":[1,1]}"#);
    }
}
