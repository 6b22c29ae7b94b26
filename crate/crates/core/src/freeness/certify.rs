//! Ping-pong certificates: `fᵢ(⋃ⱼ Iⱼ) ⊆ Iᵢ` for pairwise disjoint sets.

use crate::algebra::Mobius;

use super::sets::{arcs_cover, progressions_cover, Arc, Piece, PingPongSet, Progression};
use super::FreenessError;

/// One verified inclusion `maps[map](sets[set].pieces[piece]) ⊆ sets[map].pieces[holder]`.
#[derive(Clone, Debug)]
pub struct ImageCheck {
    pub map: usize,
    pub set: usize,
    pub piece: usize,
    pub image: Piece,
    pub holder: usize,
}

#[derive(Clone, Debug)]
pub struct FreenessCertificate {
    pub maps: Vec<Mobius>,
    pub sets: Vec<PingPongSet>,
    pub checks: Vec<ImageCheck>,
    /// Per map, whether the images also cover its set up to finitely many
    /// points. Present only when requested.
    pub equality: Option<Vec<bool>>,
}

/// The first inclusion that fails.
#[derive(Clone, Debug)]
pub struct Violation {
    pub map: usize,
    pub set: usize,
    pub piece: usize,
    pub image: Piece,
}

#[derive(Clone, Debug)]
pub enum CertifyOutcome {
    Certified(FreenessCertificate),
    Refuted(Violation),
}

impl CertifyOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, CertifyOutcome::Certified(_))
    }
}

fn check_layout(maps: &[Mobius], sets: &[PingPongSet]) -> Result<(), FreenessError> {
    if maps.len() < 2 || maps.len() != sets.len() {
        return Err(FreenessError::InvalidSet(format!("need as many sets as maps (at least 2), got {} maps and {} sets", maps.len(), sets.len())));
    }
    for (i, s) in sets.iter().enumerate() {
        if s.pieces.is_empty() {
            return Err(FreenessError::InvalidSet(format!("set {} is empty", i)));
        }
        if !s.pieces_disjoint() {
            return Err(FreenessError::SetsNotDisjoint(i, i));
        }
        for (j, t) in sets.iter().enumerate().skip(i + 1) {
            if !s.is_disjoint(t) {
                return Err(FreenessError::SetsNotDisjoint(i, j));
            }
        }
    }
    Ok(())
}

fn covers(target: &PingPongSet, images: &[&Piece]) -> bool {
    target.pieces.iter().all(|whole| match whole {
        Piece::Arc(w) => {
            let parts: Vec<&Arc> = images
                .iter()
                .filter_map(|p| match p {
                    Piece::Arc(a) if a.is_subset(w) => Some(a),
                    _ => None,
                })
                .collect();
            arcs_cover(w, &parts)
        }
        Piece::Progression(w) => {
            let parts: Vec<&Progression> = images
                .iter()
                .filter_map(|p| match p {
                    Piece::Progression(a) if a.is_subset(w) => Some(a),
                    _ => None,
                })
                .collect();
            progressions_cover(w, &parts)
        }
    })
}

/// Check every image inclusion; with `equality`, also report whether each
/// map's images fill its own set.
pub fn ping_pong_certify(maps: &[Mobius], sets: &[PingPongSet], equality: bool) -> Result<CertifyOutcome, FreenessError> {
    check_layout(maps, sets)?;
    let mut checks = vec![];
    for (i, m) in maps.iter().enumerate() {
        for (j, s) in sets.iter().enumerate() {
            for (k, piece) in s.pieces.iter().enumerate() {
                let image = piece.image(m)?;
                match sets[i].holder(&image) {
                    Some(h) => checks.push(ImageCheck { map: i, set: j, piece: k, image, holder: h }),
                    None => return Ok(CertifyOutcome::Refuted(Violation { map: i, set: j, piece: k, image })),
                }
            }
        }
    }
    let equality = equality.then(|| {
        (0..maps.len())
            .map(|i| {
                let imgs: Vec<&Piece> = checks.iter().filter(|c| c.map == i).map(|c| &c.image).collect();
                covers(&sets[i], &imgs)
            })
            .collect()
    });
    Ok(CertifyOutcome::Certified(FreenessCertificate { maps: maps.to_vec(), sets: sets.to_vec(), checks, equality }))
}

impl FreenessCertificate {
    /// Recompute every stored image and inclusion.
    pub fn revalidate(&self) -> Result<bool, FreenessError> {
        check_layout(&self.maps, &self.sets)?;
        let expected: usize = self.sets.iter().map(|s| s.pieces.len()).sum::<usize>() * self.maps.len();
        if self.checks.len() != expected {
            return Ok(false);
        }
        for c in &self.checks {
            let piece = &self.sets[c.set].pieces[c.piece];
            let image = piece.image(&self.maps[c.map])?;
            if image != c.image || !image.is_subset(&self.sets[c.map].pieces[c.holder]) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mobius {
        Mobius::from_ints(a, b, c, d).unwrap()
    }

    fn r(n: i64) -> Option<BigRational> {
        Some(BigRational::from_integer(n.into()))
    }

    #[test]
    fn translation_pair() {
        let sets = [PingPongSet::arc(r(1), None), PingPongSet::arc(r(0), r(1))];
        let out = ping_pong_certify(&[m(1, 2, 0, 1), m(1, 0, 2, 1)], &sets, true).unwrap();
        let CertifyOutcome::Certified(cert) = out else { panic!("not certified") };
        assert_eq!(cert.checks.len(), 4);
        assert!(cert.revalidate().unwrap());
        // images miss (1, 3) and (1/2, 1): inclusion only
        assert_eq!(cert.equality, Some(vec![false, false]));
    }

    #[test]
    fn parity_pair() {
        let sets = [PingPongSet::progression(1, 2).unwrap(), PingPongSet::progression(2, 2).unwrap()];
        let out = ping_pong_certify(&[m(2, 1, 0, 1), m(4, 0, 0, 1)], &sets, true).unwrap();
        assert!(out.is_certified());
    }

    #[test]
    fn scalings_refuted() {
        let sets = [PingPongSet::arc(r(1), None), PingPongSet::arc(r(0), r(1))];
        let out = ping_pong_certify(&[m(2, 0, 0, 1), m(3, 0, 0, 1)], &sets, false).unwrap();
        let CertifyOutcome::Refuted(v) = out else { panic!("certified") };
        assert_eq!((v.map, v.set), (0, 1));
    }

    #[test]
    fn overlapping_sets_rejected() {
        let sets = [PingPongSet::arc(r(0), None), PingPongSet::arc(r(0), r(1))];
        let err = ping_pong_certify(&[m(1, 2, 0, 1), m(1, 0, 2, 1)], &sets, false).unwrap_err();
        assert_eq!(err, FreenessError::SetsNotDisjoint(0, 1));
    }
}
