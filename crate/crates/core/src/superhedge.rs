//! Minimal superhedging prices by exact backward induction.
//!
//! At each atom `A` of time `s` the minimal capital needed to dominate the
//! time-`s+1` requirement `π` is the one-dimensional minimax
//!
//! `π_s|_A = min_θ max_{B ⊆ A} ( π_{s+1}|_B − θ · (S_{s+1}|_B − S_s|_A) )`,
//!
//! a minimum of the upper envelope of finitely many affine functions of
//! `θ`. It equals the concave hull of the points `(S_{s+1}, π_{s+1})` over
//! the child atoms evaluated at `S_s|_A`, which is how
//! [`superhedge_price`](MarketModel::superhedge_price) computes it; the
//! minimax is bounded below exactly when the immediate-profit sandwich
//! holds on the atom. [`superhedge_verify`](MarketModel::superhedge_verify)
//! re-derives every per-atom value by brute force over the pairwise
//! intersections of the affine pieces — a deliberately separate code path —
//! and checks the produced certificate directly.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exec;
use crate::market::{Claim, MarketModel, Strategy};
use crate::rational::Rat;
use crate::vector::LatticeVector;

/// Price vector, the full backward value curve and the hedge produced by
/// the recursion.
#[derive(Debug, Clone)]
pub struct SuperhedgeResult {
    /// Minimal superhedging price at the requested time, in `R(F_t)`.
    pub price: LatticeVector,
    /// `values[k]` is the requirement at time `t + k`; the last entry is
    /// the claim itself.
    pub values: Vec<LatticeVector>,
    /// Optimal hedge; ties resolved toward the smallest optimal holding.
    pub strategy: Strategy,
}

/// Outcome of the two-sided verification of a candidate price.
#[derive(Debug, Clone)]
pub struct SuperhedgeVerification {
    /// Whether `price + v ≥ h` held for the independently derived hedge.
    pub certified: bool,
    /// The independently derived hedge used for certification.
    pub strategy: Strategy,
    /// `price + v − h`, exact; non-negative iff `certified`.
    pub surplus: LatticeVector,
    /// Whether `price − eps` fails to superhedge, i.e. the brute-force
    /// requirement exceeds it on at least one atom.
    pub refuted: bool,
    /// Brute-force minimal requirement at the pricing time.
    pub required: LatticeVector,
    /// Per atom at the pricing time: `(atom index, required, price − eps)`.
    pub margins: Vec<(usize, Rat, Rat)>,
}

/// One affine piece `value(θ) = intercept + slope · θ` of the inner
/// maximum.
#[derive(Debug, Clone)]
struct Piece {
    slope: Rat,
    intercept: Rat,
}

impl MarketModel {
    /// Minimal superhedging price of `claim` at `time`, with the backward
    /// value curve and an optimal hedge. Fails with
    /// [`Error::MinimaxUnbounded`] on any atom where the immediate-profit
    /// sandwich is violated, naming the witness atom.
    pub fn superhedge_price(&self, claim: &Claim, time: usize) -> Result<SuperhedgeResult> {
        let horizon = self.horizon();
        if time > horizon {
            return Err(Error::TimeOutOfRange { time, horizon });
        }
        let flt = self.filtration().clone();
        let space = flt.space().clone();

        let mut values = vec![claim.payoff().clone()];
        let mut holdings_rev: Vec<LatticeVector> = Vec::new();

        for s in (time..horizon).rev() {
            let next_value = values.last().expect("seeded with the claim");
            let partition = flt.partition(s);
            let next_partition = flt.partition(s + 1);
            let spot = self.price(s);
            let next_price = self.price(s + 1);

            let per_atom: Vec<(Rat, Rat)> =
                exec::try_map_range(partition.atom_count(), |a| {
                    let atom = partition.atom(a);
                    let points: Vec<(Rat, Rat)> = flt
                        .children(s, a)
                        .iter()
                        .map(|&b| {
                            let lead = next_partition.atom(b)[0];
                            (next_price.value(lead).clone(), next_value.value(lead).clone())
                        })
                        .collect();
                    hull_minimax(&points, spot.value(atom[0])).ok_or_else(|| {
                        Error::MinimaxUnbounded {
                            time: s,
                            atom: atom.to_vec(),
                        }
                    })
                })?;
            let (value_atoms, theta_atoms): (Vec<Rat>, Vec<Rat>) =
                per_atom.into_iter().unzip();
            let broadcast = |atom_vals: &[Rat]| {
                LatticeVector::from_fn(space.clone(), |outcome| {
                    atom_vals[partition.owner(outcome)].clone()
                })
            };
            values.push(broadcast(&value_atoms));
            holdings_rev.push(broadcast(&theta_atoms));
        }

        values.reverse();
        holdings_rev.reverse();
        let strategy = Strategy::new(&flt, time, holdings_rev)
            .expect("per-atom holdings are measurable by construction");
        Ok(SuperhedgeResult {
            price: values[0].clone(),
            values,
            strategy,
        })
    }

    /// Certifies that `price` superhedges `claim` from `time` and that
    /// `price − eps` does not. The hedge is rebuilt through the brute-force
    /// minimax rather than taken from
    /// [`superhedge_price`](Self::superhedge_price), so the two routes check
    /// each other; a report with `certified` or `refuted` false signals a
    /// pricing bug (or a genuinely non-minimal candidate).
    pub fn superhedge_verify(
        &self,
        claim: &Claim,
        time: usize,
        price: &LatticeVector,
        eps: &Rat,
    ) -> Result<SuperhedgeVerification> {
        let horizon = self.horizon();
        if time > horizon {
            return Err(Error::TimeOutOfRange { time, horizon });
        }
        let flt = self.filtration().clone();
        let space = flt.space().clone();
        if price.len() != space.len() {
            return Err(Error::DimensionMismatch {
                got: price.len(),
                expected: space.len(),
            });
        }
        if !flt.partition(time).is_constant_on_atoms(price.values()) {
            return Err(Error::NotAdapted { time });
        }
        assert!(eps.is_positive(), "eps must be strictly positive");

        // Independent backward pass over pairwise-intersection candidates.
        let mut required = claim.payoff().clone();
        let mut holdings_rev: Vec<LatticeVector> = Vec::new();
        for s in (time..horizon).rev() {
            let partition = flt.partition(s);
            let next_partition = flt.partition(s + 1);
            let spot = self.price(s);
            let next_price = self.price(s + 1);
            let mut value_atoms = Vec::with_capacity(partition.atom_count());
            let mut theta_atoms = Vec::with_capacity(partition.atom_count());
            for a in 0..partition.atom_count() {
                let atom = partition.atom(a);
                let q = spot.value(atom[0]);
                let pieces: Vec<Piece> = flt
                    .children(s, a)
                    .iter()
                    .map(|&b| {
                        let lead = next_partition.atom(b)[0];
                        Piece {
                            slope: q - next_price.value(lead),
                            intercept: required.value(lead).clone(),
                        }
                    })
                    .collect();
                let (value, theta) =
                    bruteforce_minimax(&pieces).ok_or_else(|| Error::MinimaxUnbounded {
                        time: s,
                        atom: atom.to_vec(),
                    })?;
                value_atoms.push(value);
                theta_atoms.push(theta);
            }
            let broadcast = |atom_vals: &[Rat]| {
                LatticeVector::from_fn(space.clone(), |outcome| {
                    atom_vals[partition.owner(outcome)].clone()
                })
            };
            required = broadcast(&value_atoms);
            holdings_rev.push(broadcast(&theta_atoms));
        }
        holdings_rev.reverse();
        let strategy = Strategy::new(&flt, time, holdings_rev)
            .expect("per-atom holdings are measurable by construction");

        let value = self.portfolio_value(&strategy, price)?;
        let surplus = &value - claim.payoff();
        let certified = surplus.is_nonneg();

        let probe = price.add_scalar(&-eps.clone());
        let margins: Vec<(usize, Rat, Rat)> = flt
            .partition(time)
            .atoms()
            .iter()
            .enumerate()
            .map(|(a, atom)| {
                (
                    a,
                    required.value(atom[0]).clone(),
                    probe.value(atom[0]).clone(),
                )
            })
            .collect();
        let refuted = margins.iter().any(|(_, req, offer)| offer < req);

        Ok(SuperhedgeVerification {
            certified,
            strategy,
            surplus,
            refuted,
            required,
            margins,
        })
    }
}

/// Evaluates the concave hull of `points` at `spot` and returns
/// `(value, hedge)`. `None` when the minimax is unbounded below, i.e. when
/// `spot` falls outside the convex span of the abscissae.
fn hull_minimax(points: &[(Rat, Rat)], spot: &Rat) -> Option<(Rat, Rat)> {
    // Collapse duplicate abscissae to their best ordinate.
    let mut sorted: Vec<(Rat, Rat)> = Vec::with_capacity(points.len());
    {
        let mut pts = points.to_vec();
        pts.sort();
        for (x, y) in pts {
            match sorted.last_mut() {
                Some((lx, ly)) if *lx == x => {
                    if y > *ly {
                        *ly = y;
                    }
                }
                _ => sorted.push((x, y)),
            }
        }
    }
    let first = sorted.first()?;
    let last = sorted.last().expect("non-empty");
    if spot < &first.0 || spot > &last.0 {
        return None;
    }
    if sorted.len() == 1 {
        // Deterministic single-point case: any hedge is optimal, take 0.
        return Some((first.1.clone(), Rat::zero()));
    }

    // Upper hull, left to right: drop middle points on or below a chord.
    let mut hull: Vec<(Rat, Rat)> = Vec::with_capacity(sorted.len());
    for p in sorted {
        while hull.len() >= 2 {
            let o = &hull[hull.len() - 2];
            let a = &hull[hull.len() - 1];
            // cross ≥ 0 means `a` is not strictly above the chord o–p.
            let cross =
                (&a.0 - &o.0) * (&p.1 - &o.1) - (&a.1 - &o.1) * (&p.0 - &o.0);
            if cross >= Rat::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }

    // Locate the hull segment containing `spot`. When `spot` hits a vertex
    // the segment to its right realizes the smallest optimal hedge; at the
    // right boundary only the left segment exists.
    let seg = hull
        .windows(2)
        .position(|w| &w[0].0 <= spot && spot < &w[1].0)
        .unwrap_or(hull.len() - 2);
    let (xl, yl) = &hull[seg];
    let (xr, yr) = &hull[seg + 1];
    let theta = (yr - yl) / (xr - xl);
    let value = yl + &theta * &(spot - xl);
    Some((value, theta))
}

/// Brute-force minimum of `max_i (intercept_i + slope_i θ)` over θ:
/// evaluates every pairwise intersection plus θ = 0 and keeps the smallest
/// value, breaking ties toward the smallest θ. Bounded iff slopes of both
/// signs (or zero) are present.
fn bruteforce_minimax(pieces: &[Piece]) -> Option<(Rat, Rat)> {
    if pieces.is_empty() {
        return None;
    }
    let any_nonneg = pieces.iter().any(|p| !p.slope.is_negative());
    let any_nonpos = pieces.iter().any(|p| !p.slope.is_positive());
    if !(any_nonneg && any_nonpos) {
        return None;
    }
    let eval = |theta: &Rat| -> Rat {
        pieces
            .iter()
            .map(|p| &p.intercept + &p.slope * theta)
            .max()
            .expect("non-empty pieces")
    };
    let mut candidates = vec![Rat::zero()];
    for i in 0..pieces.len() {
        for j in (i + 1)..pieces.len() {
            if pieces[i].slope != pieces[j].slope {
                candidates.push(
                    (&pieces[i].intercept - &pieces[j].intercept)
                        / (&pieces[j].slope - &pieces[i].slope),
                );
            }
        }
    }
    let mut best: Option<(Rat, Rat)> = None;
    for theta in candidates {
        let value = eval(&theta);
        best = match best {
            None => Some((value, theta)),
            Some((bv, bt)) => {
                if value < bv || (value == bv && theta < bt) {
                    Some((value, theta))
                } else {
                    Some((bv, bt))
                }
            }
        };
    }
    best
}
