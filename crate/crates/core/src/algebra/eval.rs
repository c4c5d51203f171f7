use std::collections::HashMap;
use std::rc::Rc;

use super::{AlgebraError, Counterexample, Operations, QuantAlgebra};
use crate::logic::ConditionalEquation;
use crate::scalar::Scalar;
use crate::term::{Name, Term};

/// Default limit on `|carrier|^|variables|` for one satisfaction check.
pub const DEFAULT_ASSIGNMENT_CAP: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Instr {
    Var(usize),
    Apply { symbol: usize, arity: usize },
}

/// A term flattened to postorder against a fixed symbol order and variable
/// list, so that it can be run against many algebras of one signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermProgram {
    code: Vec<Instr>,
}

impl TermProgram {
    pub fn compile(ops: &Operations, vars: &[Name], t: &Term) -> Result<Self, AlgebraError> {
        let mut code = Vec::new();
        emit(ops, vars, t, &mut code)?;
        Ok(TermProgram { code })
    }

    /// `env[i]` is the value of `vars[i]`.
    pub fn run(&self, ops: &Operations, env: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for instr in &self.code {
            match *instr {
                Instr::Var(i) => stack.push(env[i]),
                Instr::Apply { symbol, arity } => {
                    let base = stack.len() - arity;
                    let v = ops.apply(symbol, &stack[base..]);
                    stack.truncate(base);
                    stack.push(v);
                }
            }
        }
        stack[0]
    }
}

fn emit(
    ops: &Operations,
    vars: &[Name],
    t: &Term,
    code: &mut Vec<Instr>,
) -> Result<(), AlgebraError> {
    match t {
        Term::Var(v) => {
            let i = vars
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| AlgebraError::UnboundVariable(v.clone()))?;
            code.push(Instr::Var(i));
        }
        Term::App(f, args) => {
            let symbol = ops
                .symbol_index(f)
                .ok_or_else(|| AlgebraError::UnknownSymbol(f.clone()))?;
            let arity = ops.tables()[symbol].1.arity();
            if arity != args.len() {
                return Err(AlgebraError::ArityMismatch {
                    symbol: f.clone(),
                    expected: arity,
                    found: args.len(),
                });
            }
            for a in args {
                emit(ops, vars, a, code)?;
            }
            code.push(Instr::Apply { symbol, arity });
        }
    }
    Ok(())
}

/// Satisfaction checks against one algebra over a fixed variable list.
///
/// Each term's value under every assignment is computed once and cached, so
/// sweeping many equations over the same terms costs one table per term.
/// Assignments are numbered in odometer order, first variable most
/// significant.
pub struct SatisfactionChecker<'a, S> {
    algebra: &'a QuantAlgebra<S>,
    vars: Vec<Name>,
    count: usize,
    cache: HashMap<Term, Rc<[u32]>>,
}

impl<'a, S: Scalar> SatisfactionChecker<'a, S> {
    pub fn new(
        algebra: &'a QuantAlgebra<S>,
        vars: Vec<Name>,
        cap: usize,
    ) -> Result<Self, AlgebraError> {
        let count = (algebra.size() as u128).pow(vars.len() as u32);
        if count > cap as u128 {
            return Err(AlgebraError::AssignmentCap { count, cap });
        }
        Ok(SatisfactionChecker {
            algebra,
            vars,
            count: count as usize,
            cache: HashMap::new(),
        })
    }

    pub fn variables(&self) -> &[Name] {
        &self.vars
    }

    pub fn assignment_count(&self) -> usize {
        self.count
    }

    /// Element indices of assignment number `index`.
    pub fn assignment(&self, index: usize) -> Vec<usize> {
        let n = self.algebra.size();
        let mut out = vec![0; self.vars.len()];
        let mut rest = index;
        for slot in out.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        out
    }

    /// The value of `t` under every assignment.
    pub fn values(&mut self, t: &Term) -> Result<Rc<[u32]>, AlgebraError> {
        if let Some(v) = self.cache.get(t) {
            return Ok(v.clone());
        }
        let table: Rc<[u32]> = match t {
            Term::Var(v) => {
                let p = self
                    .vars
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| AlgebraError::UnboundVariable(v.clone()))?;
                let n = self.algebra.size();
                let stride = n.pow((self.vars.len() - 1 - p) as u32);
                (0..self.count).map(|i| ((i / stride) % n) as u32).collect()
            }
            Term::App(f, args) => {
                let ops = self.algebra.ops();
                let symbol = ops
                    .symbol_index(f)
                    .ok_or_else(|| AlgebraError::UnknownSymbol(f.clone()))?;
                let op = &ops.tables()[symbol].1;
                if op.arity() != args.len() {
                    return Err(AlgebraError::ArityMismatch {
                        symbol: f.clone(),
                        expected: op.arity(),
                        found: args.len(),
                    });
                }
                let children = args
                    .iter()
                    .map(|a| self.values(a))
                    .collect::<Result<Vec<_>, _>>()?;
                let ops = self.algebra.ops();
                let op = &ops.tables()[symbol].1;
                let mut buf = vec![0usize; args.len()];
                (0..self.count)
                    .map(|i| {
                        for (slot, c) in buf.iter_mut().zip(&children) {
                            *slot = c[i] as usize;
                        }
                        op.apply(&buf) as u32
                    })
                    .collect()
            }
        };
        self.cache.insert(t.clone(), table.clone());
        Ok(table)
    }

    pub fn find_violation(
        &mut self,
        ce: &ConditionalEquation<S>,
    ) -> Result<Option<Counterexample<S>>, AlgebraError> {
        let Some(index) = self.violation_index(ce)? else {
            return Ok(None);
        };
        let env = self.assignment(index);
        let c = &ce.conclusion;
        let l = self.values(&c.left)?[index] as usize;
        let r = self.values(&c.right)?[index] as usize;
        Ok(Some(Counterexample {
            assignment: self
                .vars
                .iter()
                .zip(&env)
                .map(|(v, &e)| (v.clone(), self.algebra.element(e).clone()))
                .collect(),
            violated: c.clone(),
            distance: self.algebra.distance(l, r).clone(),
        }))
    }

    pub fn satisfies(&mut self, ce: &ConditionalEquation<S>) -> Result<bool, AlgebraError> {
        Ok(self.violation_index(ce)?.is_none())
    }

    fn violation_index(
        &mut self,
        ce: &ConditionalEquation<S>,
    ) -> Result<Option<usize>, AlgebraError> {
        let mut hyps = Vec::with_capacity(ce.hypotheses.len());
        for h in &ce.hypotheses {
            hyps.push((self.values(&h.left)?, self.values(&h.right)?, &h.bound));
        }
        let left = self.values(&ce.conclusion.left)?;
        let right = self.values(&ce.conclusion.right)?;
        let bound = &ce.conclusion.bound;
        let a = self.algebra;
        Ok((0..self.count).find(|&i| {
            hyps.iter()
                .all(|(l, r, b)| a.distance(l[i] as usize, r[i] as usize).within(b))
                && !a
                    .distance(left[i] as usize, right[i] as usize)
                    .within(bound)
        }))
    }
}
