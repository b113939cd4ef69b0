//! Seeded test-field families. Every draw is a pure function of the seed, so
//! suite reports are reproducible bit for bit.
//!
//! Two 3-D families: polynomials of degree at most three in the mapped
//! coordinates, and products of sine/cosine/exponential factors of the mapped
//! coordinates with moderate rates. The 1-D family mixes low-degree mapped
//! polynomials with single transcendental terms on bounded windows, keeping
//! every corpus member smooth and O(1)-sized on the standard test geometry.

use crate::mapped::{mapped_curl, MappedExpr, MappedSeries, SepTerm, Unary};
use rand::{Rng, SeedableRng};

/// Deterministic generator of corpus fields.
pub struct Corpus {
    rng: rand_chacha::ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus {
            rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn coeff(&mut self) -> f64 {
        self.rng.random_range(-2.0..2.0)
    }

    fn rate(&mut self) -> f64 {
        self.rng.random_range(0.4..1.2)
    }

    /// Random polynomial of total degree <= 3 in the mapped coordinates.
    pub fn scalar_poly(&mut self) -> MappedExpr {
        let mut terms = Vec::new();
        // Constant plus a handful of monomials.
        terms.push(SepTerm {
            coeff: self.coeff(),
            factors: [Unary::One; 3],
        });
        let n_monomials = self.rng.random_range(3..6);
        for _ in 0..n_monomials {
            loop {
                let powers: [u32; 3] = [
                    self.rng.random_range(0..4),
                    self.rng.random_range(0..4),
                    self.rng.random_range(0..4),
                ];
                if powers.iter().sum::<u32>() == 0 || powers.iter().sum::<u32>() > 3 {
                    continue;
                }
                let factor = |p: u32| if p == 0 { Unary::One } else { Unary::Pow(p) };
                terms.push(SepTerm {
                    coeff: self.coeff(),
                    factors: [factor(powers[0]), factor(powers[1]), factor(powers[2])],
                });
                break;
            }
        }
        MappedExpr { terms }
    }

    fn transcendental_factor(&mut self) -> Unary {
        match self.rng.random_range(0..5) {
            0 => Unary::One,
            1 => Unary::Pow(self.rng.random_range(1..3)),
            2 => Unary::Sin(self.rate()),
            3 => Unary::Cos(self.rate()),
            _ => Unary::Exp(self.rate()),
        }
    }

    /// Random product of sin/cos/exp/power factors of the mapped coordinates
    /// (one or two separable terms).
    pub fn scalar_transcendental(&mut self) -> MappedExpr {
        let n_terms = self.rng.random_range(1..3);
        let mut terms = Vec::new();
        for _ in 0..n_terms {
            terms.push(SepTerm {
                coeff: self.coeff(),
                factors: [
                    self.transcendental_factor(),
                    self.transcendental_factor(),
                    self.transcendental_factor(),
                ],
            });
        }
        MappedExpr { terms }
    }

    pub fn vector_poly(&mut self) -> [MappedExpr; 3] {
        [self.scalar_poly(), self.scalar_poly(), self.scalar_poly()]
    }

    pub fn vector_transcendental(&mut self) -> [MappedExpr; 3] {
        [
            self.scalar_transcendental(),
            self.scalar_transcendental(),
            self.scalar_transcendental(),
        ]
    }

    /// Divergence-free (in the mapped coordinates) vector expression, built
    /// as the symbolic curl of a random potential.
    pub fn divergence_free(&mut self, transcendental: bool) -> [MappedExpr; 3] {
        let a = if transcendental {
            self.vector_transcendental()
        } else {
            self.vector_poly()
        };
        mapped_curl(&a)
    }

    /// Random 1-D function of the mapped coordinate: cubic polynomial plus an
    /// optional transcendental term with rate at most 2.
    pub fn series_1d(&mut self) -> MappedSeries {
        let mut terms = vec![
            (self.coeff(), Unary::One),
            (self.coeff(), Unary::Pow(1)),
            (self.coeff(), Unary::Pow(2)),
            (self.coeff() * 0.5, Unary::Pow(3)),
        ];
        match self.rng.random_range(0..3) {
            0 => terms.push((self.coeff(), Unary::Sin(self.rng.random_range(0.5..2.0)))),
            1 => terms.push((self.coeff(), Unary::Exp(self.rng.random_range(0.3..1.0)))),
            _ => {}
        }
        MappedSeries::new(terms)
    }

    /// Strictly monotone 1-D function of the mapped coordinate (positive
    /// slope bounded away from zero), for mean-value checks.
    pub fn monotone_series_1d(&mut self) -> MappedSeries {
        let slope = self.rng.random_range(0.5..2.0);
        let quad = self.rng.random_range(0.0..0.4);
        let offset = self.coeff();
        MappedSeries::new(vec![
            (offset, Unary::One),
            (slope, Unary::Pow(1)),
            (quad, Unary::Pow(2)),
        ])
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }
}

/// Seeded sample points in the open cube `(lo, hi)^3`.
pub fn sample_points_3d(seed: u64, count: usize, lo: f64, hi: f64) -> Vec<[f64; 3]> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            [
                rng.random_range(lo..hi),
                rng.random_range(lo..hi),
                rng.random_range(lo..hi),
            ]
        })
        .collect()
}
