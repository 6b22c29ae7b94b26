//! Exhaustive search for two distinct words that compose to the same map.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Mobius;
use crate::numeric::{CBall, Dyadic};

use super::FreenessError;

const LETTERS: &[u8] = b"FGHIJKLMNOPQRSTUVWXYZ";

/// A word `w₀ w₁ … w_k`, read as the composition `m[w₀] ∘ m[w₁] ∘ … ∘ m[w_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn parse(s: &str) -> Option<Word> {
        s.bytes().map(|b| LETTERS.iter().position(|&l| l == b.to_ascii_uppercase())).collect::<Option<Vec<_>>>().filter(|v| !v.is_empty()).map(Word)
    }

    pub fn evaluate(&self, maps: &[Mobius]) -> Result<Mobius, FreenessError> {
        let mut acc = Mobius::identity();
        for &i in &self.0 {
            let m = maps.get(i).ok_or_else(|| FreenessError::InvalidSet(format!("letter {} has no map", i)))?;
            acc = acc.compose(m)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &i in &self.0 {
            write!(f, "{}", LETTERS[i] as char)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct RelationWitness {
    pub word1: Word,
    pub word2: Word,
    pub common_map: Mobius,
}

impl RelationWitness {
    /// Both words recompose to `common_map`.
    pub fn verify(&self, maps: &[Mobius]) -> Result<bool, FreenessError> {
        Ok(self.word1 != self.word2 && self.word1.evaluate(maps)?.eq_exact(&self.common_map) && self.word2.evaluate(maps)?.eq_exact(&self.common_map))
    }
}

struct Entry {
    word: Word,
    map: Mobius,
    balls: [CBall; 4],
}

const PREC: u64 = 96;

/// First collision among all words of length `1..=max_len` over `maps`, in
/// shortlex order of the later word.
pub fn relation_search_many(maps: &[Mobius], max_len: usize) -> Result<Option<RelationWitness>, FreenessError> {
    if maps.is_empty() || maps.len() > LETTERS.len() {
        return Err(FreenessError::InvalidSet(format!("need between 1 and {} maps", LETTERS.len())));
    }
    let mut seen: Vec<Entry> = vec![];
    // seen entries by the real part of their summed entry balls; two maps can
    // only be equal if these keys lie within the sum of the radii
    let mut index: BTreeMap<Dyadic, Vec<usize>> = BTreeMap::new();
    let mut max_rad = Dyadic::zero();
    let mut layer: Vec<(Word, Mobius)> = vec![(Word(vec![]), Mobius::identity())];
    for _ in 0..max_len {
        let mut next = vec![];
        for (w, m) in &layer {
            for (i, g) in maps.iter().enumerate() {
                let mut letters = w.0.clone();
                letters.push(i);
                let map = m.compose(g)?;
                let balls = map.balls(PREC);
                let key = balls[1..].iter().fold(balls[0].clone(), |acc, b| acc.add(b, PREC));
                let reach = key.rad.add(&max_rad);
                let mut near: Vec<usize> = index.range(key.re.sub(&reach)..=key.re.add(&reach)).flat_map(|(_, v)| v.iter().copied()).collect();
                near.sort_unstable();
                let hit = near.into_iter().map(|j| &seen[j]).find(|e| e.balls.iter().zip(&balls).all(|(a, b)| a.overlaps(b)) && e.map.eq_exact(&map));
                if let Some(e) = hit {
                    return Ok(Some(RelationWitness { word1: e.word.clone(), word2: Word(letters), common_map: map }));
                }
                if key.rad > max_rad {
                    max_rad = key.rad.clone();
                }
                index.entry(key.re).or_default().push(seen.len());
                seen.push(Entry { word: Word(letters.clone()), map: map.clone(), balls });
                next.push((Word(letters), map));
            }
        }
        layer = next;
    }
    Ok(None)
}

pub fn relation_search(f: &Mobius, g: &Mobius, max_len: usize) -> Result<Option<RelationWitness>, FreenessError> {
    relation_search_many(&[f.clone(), g.clone()], max_len)
}
