//! Embedded resolution by point blow-ups.
//!
//! A point state is an orbit of conjugate infinitely near points, described
//! over a field tower, together with the local equations of the curves and
//! up to two exceptional divisors through it (`{x = 0}` and `{y = 0}` in
//! local coordinates). States are processed first in, first out. Whenever
//! dynamic evaluation splits the tower of a state, the state is replaced by
//! one state per factor, at the front of the queue and in factor order.

use std::collections::VecDeque;

use num_traits::{One, Zero};

use crate::algebra::tower::{Adjoined, AlgNum, FieldTower, Split, TowerMap};
use crate::algebra::{Poly2, Rational, Scalar, UPoly};
use crate::error::Error;

type QPoly = Poly2<Rational>;
type APoly = Poly2<AlgNum>;

/// Upper bound on the number of exceptional divisors of one resolution.
pub const MAX_BLOWUPS: usize = 4096;

/// An exceptional divisor (really an orbit of `degree` conjugate ones).
#[derive(Clone, Debug, PartialEq)]
pub struct Exceptional {
    /// 1-based, in creation order.
    pub index: usize,
    /// Coefficient in the relative canonical divisor.
    pub k: i64,
    /// Order along this divisor of the total transform of each curve.
    pub ord: Vec<i64>,
    pub degree: u64,
    /// Exceptional divisors through the blown-up point.
    pub center_on: Vec<usize>,
}

/// A blown-up point and the multiplicities of the curves there.
#[derive(Clone, Debug, PartialEq)]
pub struct BlownPoint {
    pub exceptional: usize,
    pub degree: u64,
    pub mult: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct PointState {
    tower: FieldTower,
    curves: Vec<(usize, APoly)>,
    ex_x: Option<usize>,
    ex_y: Option<usize>,
}

impl PointState {
    fn exceptionals(&self) -> Vec<usize> {
        self.ex_x.iter().chain(self.ex_y.iter()).copied().collect()
    }

    fn mapped(&self, tower: FieldTower, map: &TowerMap) -> PointState {
        PointState {
            tower,
            curves: self
                .curves
                .iter()
                .map(|(id, g)| (*id, g.map_coeffs(|c| map.map(c))))
                .collect(),
            ex_x: self.ex_x,
            ex_y: self.ex_y,
        }
    }
}

/// A point of the final model where the total transform is simple normal
/// crossing and meets at least one curve or two exceptional divisors.
#[derive(Clone, Debug)]
pub struct TerminalPoint {
    pub degree: u64,
    /// Curves through the point; each is smooth there.
    pub curves: Vec<usize>,
    pub exceptionals: Vec<usize>,
    state: PointState,
}

#[derive(Clone, Debug)]
pub struct ResolutionTree {
    pub curves: Vec<QPoly>,
    pub exceptionals: Vec<Exceptional>,
    pub blown: Vec<BlownPoint>,
    pub terminals: Vec<TerminalPoint>,
}

enum Outcome {
    Dropped,
    Terminal(TerminalPoint),
    BlowUp {
        mult: Vec<u32>,
        children: Vec<PointState>,
    },
}

/// `sum c x^(i+j-m) y^j`: chart `y = x y'` with `x = 0` exceptional.
fn chart_x(g: &APoly, m: u32) -> APoly {
    Poly2::from_terms(g.terms().map(|(&(i, j), c)| ((i + j - m, j), c.clone())))
}

/// `sum c x^i y^(i+j-m)`: chart `x = x' y` with `y = 0` exceptional.
fn chart_y(g: &APoly, m: u32) -> APoly {
    Poly2::from_terms(g.terms().map(|(&(i, j), c)| ((i, i + j - m), c.clone())))
}

fn is_zero(c: &AlgNum) -> Result<bool, Split> {
    c.is_zero_d5()
}

fn passes(g: &APoly) -> Result<bool, Split> {
    is_zero(&g.coeff(0, 0))
}

fn linear_form(g: &APoly) -> (AlgNum, AlgNum) {
    (g.coeff(1, 0), g.coeff(0, 1))
}

fn is_snc(state: &PointState, mult: &[u32]) -> Result<bool, Split> {
    if mult.iter().any(|&m| m != 1) {
        return Ok(false);
    }
    let mut forms: Vec<(AlgNum, AlgNum)> =
        state.curves.iter().map(|(_, g)| linear_form(g)).collect();
    if state.ex_x.is_some() {
        forms.push((AlgNum::one(), AlgNum::zero()));
    }
    if state.ex_y.is_some() {
        forms.push((AlgNum::zero(), AlgNum::one()));
    }
    match forms.len() {
        0 | 1 => Ok(true),
        2 => {
            let det =
                forms[0].0.clone() * forms[1].1.clone() - forms[0].1.clone() * forms[1].0.clone();
            Ok(!is_zero(&det)?)
        }
        _ => Ok(false),
    }
}

/// Index of the lowest coefficient that is nonzero in every branch.
fn lowest_nonzero(p: &UPoly<AlgNum>) -> Result<usize, Split> {
    for (k, c) in p.coeffs().iter().enumerate() {
        if !is_zero(c)? {
            return Ok(k);
        }
    }
    unreachable!("tangent cone product vanishes identically")
}

fn process(state: &PointState, next_index: usize, force: bool) -> Result<Outcome, Split> {
    let mut through = Vec::new();
    for (id, g) in &state.curves {
        if passes(g)? {
            through.push((*id, g.clone()));
        }
    }
    let state = PointState {
        curves: through,
        ..state.clone()
    };
    if state.curves.is_empty() && !force {
        if state.ex_x.is_some() && state.ex_y.is_some() {
            return Ok(Outcome::Terminal(TerminalPoint {
                degree: state.tower.degree(),
                curves: Vec::new(),
                exceptionals: state.exceptionals(),
                state,
            }));
        }
        return Ok(Outcome::Dropped);
    }
    let mut mult = Vec::with_capacity(state.curves.len());
    for (_, g) in &state.curves {
        mult.push(g.multiplicity_d5()?);
    }
    if !force && is_snc(&state, &mult)? {
        return Ok(Outcome::Terminal(TerminalPoint {
            degree: state.tower.degree(),
            curves: state.curves.iter().map(|(id, _)| *id).collect(),
            exceptionals: state.exceptionals(),
            state,
        }));
    }

    // Tangent directions y = z x with z != 0 form one orbit.
    let mut cone = UPoly::<AlgNum>::one();
    for ((_, g), &m) in state.curves.iter().zip(&mult) {
        cone = cone.mul(&g.homogeneous_part(m).dehomogenize_x());
    }
    let k = lowest_nonzero(&cone)?;
    let shifted = UPoly::new(cone.coeffs()[k..].to_vec());
    let roots = shifted.squarefree_part()?;
    let orbit = if roots.degree().unwrap_or(0) >= 1 {
        let name = format!("t{}", state.tower.height() + 1);
        Some(match state.tower.adjoin_root(&roots, &name)? {
            Adjoined::Existing(c) => (state.tower.clone(), c),
            Adjoined::New(t, c) => (t, c),
        })
    } else {
        None
    };

    let mut children = Vec::new();
    let on_x: Vec<(usize, APoly)> = state
        .curves
        .iter()
        .zip(&mult)
        .map(|((id, g), &m)| (*id, chart_x(g, m)))
        .collect();
    children.push(PointState {
        tower: state.tower.clone(),
        curves: on_x.clone(),
        ex_x: Some(next_index),
        ex_y: state.ex_y,
    });
    if let Some((tower, c)) = orbit {
        let y_shift = Poly2::y().add(&Poly2::constant(c));
        let curves = on_x
            .iter()
            .map(|(id, g)| (*id, g.substitute(&Poly2::x(), &y_shift)))
            .collect();
        children.push(PointState {
            tower,
            curves,
            ex_x: Some(next_index),
            ex_y: None,
        });
    }
    children.push(PointState {
        tower: state.tower.clone(),
        curves: state
            .curves
            .iter()
            .zip(&mult)
            .map(|((id, g), &m)| (*id, chart_y(g, m)))
            .collect(),
        ex_x: state.ex_x,
        ex_y: Some(next_index),
    });
    let ids: Vec<usize> = state.curves.iter().map(|(id, _)| *id).collect();
    Ok(Outcome::BlowUp {
        mult: scatter(&ids, &mult),
        children,
    })
}

/// Multiplicities indexed by curve id; the largest id bounds the length
/// and callers pad.
fn scatter(ids: &[usize], mult: &[u32]) -> Vec<u32> {
    let len = ids.iter().map(|&i| i + 1).max().unwrap_or(0);
    let mut out = vec![0; len];
    for (&id, &m) in ids.iter().zip(mult) {
        out[id] = m;
    }
    out
}

impl ResolutionTree {
    /// Resolves the union of `curves`, each squarefree and vanishing at
    /// the origin, pairwise coprime.
    pub fn resolve(curves: &[QPoly]) -> Result<Self, Error> {
        let origin = PointState {
            tower: FieldTower::rationals(),
            curves: curves
                .iter()
                .enumerate()
                .map(|(id, f)| (id, f.map_coeffs(|c| AlgNum::from_rational(c))))
                .collect(),
            ex_x: None,
            ex_y: None,
        };
        let mut tree = ResolutionTree {
            curves: curves.to_vec(),
            exceptionals: Vec::new(),
            blown: Vec::new(),
            terminals: Vec::new(),
        };
        tree.run(VecDeque::from([(origin, false)]))?;
        Ok(tree)
    }

    fn run(&mut self, mut queue: VecDeque<(PointState, bool)>) -> Result<(), Error> {
        let n = self.curves.len();
        while let Some((state, force)) = queue.pop_front() {
            match process(&state, self.exceptionals.len() + 1, force) {
                Err(split) => {
                    let branches = state.tower.branches(&split);
                    for (tower, map) in branches.into_iter().rev() {
                        queue.push_front((state.mapped(tower, &map), force));
                    }
                }
                Ok(Outcome::Dropped) => {}
                Ok(Outcome::Terminal(t)) => self.terminals.push(t),
                Ok(Outcome::BlowUp { mut mult, children }) => {
                    if self.exceptionals.len() >= MAX_BLOWUPS {
                        return Err(Error::Invalid(format!(
                            "resolution exceeded {MAX_BLOWUPS} blow-ups"
                        )));
                    }
                    mult.resize(n, 0);
                    let center_on = state.exceptionals();
                    let index = self.exceptionals.len() + 1;
                    let mut k = 1;
                    let mut ord: Vec<i64> = mult.iter().map(|&m| m as i64).collect();
                    for &e in &center_on {
                        let rec = &self.exceptionals[e - 1];
                        k += rec.k;
                        for (o, r) in ord.iter_mut().zip(&rec.ord) {
                            *o += r;
                        }
                    }
                    let degree = state.tower.degree();
                    self.exceptionals.push(Exceptional {
                        index,
                        k,
                        ord,
                        degree,
                        center_on,
                    });
                    self.blown.push(BlownPoint {
                        exceptional: index,
                        degree,
                        mult,
                    });
                    for child in children {
                        queue.push_back((child, false));
                    }
                }
            }
        }
        Ok(())
    }

    /// Blows up terminal point `idx` once more. The result is again a
    /// resolution; the terminal list is rebuilt with the new points last.
    pub fn blow_up_terminal(&mut self, idx: usize) -> Result<(), Error> {
        let t = self.terminals.remove(idx);
        self.run(VecDeque::from([(t.state, true)]))
    }

    pub fn num_blowups(&self) -> usize {
        self.exceptionals.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn tree(polys: &[&str]) -> ResolutionTree {
        let curves: Vec<QPoly> = polys.iter().map(|s| parse_poly(s).unwrap()).collect();
        ResolutionTree::resolve(&curves).unwrap()
    }

    fn ks(t: &ResolutionTree) -> Vec<i64> {
        t.exceptionals.iter().map(|e| e.k).collect()
    }

    fn ords(t: &ResolutionTree, j: usize) -> Vec<i64> {
        t.exceptionals.iter().map(|e| e.ord[j]).collect()
    }

    #[test]
    fn cusp() {
        let t = tree(&["x^2 + y^3"]);
        assert_eq!(ks(&t), vec![1, 2, 4]);
        assert_eq!(ords(&t, 0), vec![2, 3, 6]);
    }

    #[test]
    fn smooth_curve_needs_nothing() {
        let t = tree(&["x"]);
        assert_eq!(t.num_blowups(), 0);
        assert_eq!(t.terminals.len(), 1);
    }

    #[test]
    fn tacnode() {
        let t = tree(&["x^2 - y^4"]);
        assert_eq!(ks(&t), vec![1, 2]);
        assert_eq!(ords(&t, 0), vec![2, 4]);
    }

    #[test]
    fn conjugate_tangents_form_one_orbit() {
        let t = tree(&["x^2 + y^2"]);
        assert_eq!(t.num_blowups(), 1);
        let with_curve: Vec<_> = t
            .terminals
            .iter()
            .filter(|p| !p.curves.is_empty())
            .collect();
        assert_eq!(with_curve.len(), 1);
        assert_eq!(with_curve[0].degree, 2);
    }

    #[test]
    fn split_orbit() {
        // x^2 - 2 y^2 and x^2 - y^2 share nothing; the tangent cone product
        // (1 - 2z^2)(1 - z^2) gives one orbit that splits over Q.
        let t = tree(&["x^2 - 2*y^2", "x^2 - y^2"]);
        assert_eq!(t.num_blowups(), 1);
        let degrees: u64 = t
            .terminals
            .iter()
            .filter(|p| !p.curves.is_empty())
            .map(|p| p.degree)
            .sum();
        assert_eq!(degrees, 4);
    }

    #[test]
    fn extra_blowups_keep_snc() {
        let mut t = tree(&["x^2 + y^3"]);
        let before = t.num_blowups();
        t.blow_up_terminal(0).unwrap();
        assert_eq!(t.num_blowups(), before + 1);
        for p in &t.terminals {
            assert!(p.curves.len() + p.exceptionals.len() <= 2);
        }
    }
}
