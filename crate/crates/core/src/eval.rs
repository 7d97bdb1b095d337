//! Direct evaluation of expressions at finite, infinite and infinitesimal
//! points, including user-defined piecewise functions.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::gross::{GrossError, GrossNumber, Parity};
use crate::numio::{
    print_canonical, BinOp, Branch, Expr, ExprKind, FunctionDef, Position, PrintMode, Stmt,
};
use crate::rational::{self, Rational};
use crate::setcalc::{self, ProbabilityModel, ProgressionSet, SetError};

const MAX_CALL_DEPTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DivisionMode {
    /// `/` must divide exactly; otherwise evaluation fails.
    #[default]
    ExactOnly,
    /// `/` keeps the quotient of long division truncated to this many terms.
    Truncate(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Number(GrossNumber),
    Set(ProgressionSet),
}

impl Value {
    fn type_name(&self) -> &'static str {
        match self {
            Value::Number(_) => "number",
            Value::Set(_) => "set",
        }
    }

    pub fn render(&self, mode: PrintMode) -> String {
        match self {
            Value::Number(x) => print_canonical(x, mode),
            Value::Set(s) => format!(
                "progression({}, {}, {})",
                print_canonical(s.start(), mode),
                print_canonical(&GrossNumber::from_rational(s.step().clone()), mode),
                print_canonical(s.count(), mode)
            ),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(PrintMode::Exact))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalErrorKind {
    #[error("unbound name {0}")]
    UnboundName(String),
    #[error("unknown function {0}")]
    UnknownFunction(String),
    #[error("{function} expects {expected} argument(s), got {found}")]
    ArityMismatch {
        function: String,
        expected: String,
        found: usize,
    },
    #[error("expected {expected}, found {found}")]
    TypeMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("{0} is not a finite rational")]
    NotFinite(GrossNumber),
    #[error("no branch of {function} matches argument {argument}")]
    NoBranchMatched {
        function: String,
        argument: GrossNumber,
    },
    #[error("several branches of {function} match argument {argument}")]
    AmbiguousBranch {
        function: String,
        argument: GrossNumber,
    },
    #[error("{0} is a builtin and cannot be redefined")]
    ReservedName(String),
    #[error("call depth exceeds {0}")]
    RecursionLimit(usize),
    #[error(transparent)]
    Arithmetic(#[from] GrossError),
    #[error(transparent)]
    Set(#[from] SetError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub position: Option<Position>,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some(p) => write!(f, "{p}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

impl std::error::Error for EvalError {}

impl EvalError {
    fn at(kind: impl Into<EvalErrorKind>, pos: Position) -> Self {
        EvalError {
            kind: kind.into(),
            position: Some(pos),
        }
    }
}

impl From<EvalErrorKind> for EvalError {
    fn from(kind: EvalErrorKind) -> Self {
        EvalError {
            kind,
            position: None,
        }
    }
}

/// A one-parameter function given by sign-conditioned branches. A plain
/// `def g(y) = y` is a single unconditional branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseFn {
    pub name: String,
    pub param: String,
    pub branches: Vec<Branch>,
}

impl From<FunctionDef> for PiecewiseFn {
    fn from(def: FunctionDef) -> Self {
        PiecewiseFn {
            name: def.name,
            param: def.param,
            branches: def.branches,
        }
    }
}

/// Session state: variable bindings, user functions, division policy.
#[derive(Debug, Clone, Default)]
pub struct Env {
    bindings: HashMap<String, Value>,
    functions: HashMap<String, PiecewiseFn>,
    division: DivisionMode,
}

/// What a statement did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Value(Value),
    Bound(String, Value),
    Defined(String),
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_division(division: DivisionMode) -> Self {
        Env {
            division,
            ..Self::default()
        }
    }

    pub fn division(&self) -> DivisionMode {
        self.division
    }

    pub fn set_division(&mut self, division: DivisionMode) {
        self.division = division;
    }

    pub fn bind(&mut self, name: impl Into<String>, value: impl Into<Value>) {
        self.bindings.insert(name.into(), value.into());
    }

    pub fn lookup(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }

    pub fn define(&mut self, f: PiecewiseFn) -> Result<(), EvalError> {
        if BUILTINS.contains(&f.name.as_str()) {
            return Err(EvalErrorKind::ReservedName(f.name).into());
        }
        self.functions.insert(f.name.clone(), f);
        Ok(())
    }

    pub fn function(&self, name: &str) -> Option<&PiecewiseFn> {
        self.functions.get(name)
    }

    /// Runs one statement against the session.
    pub fn execute(&mut self, stmt: Stmt) -> Result<Outcome, EvalError> {
        match stmt {
            Stmt::Let { name, value, .. } => {
                let v = evaluate_value(&value, self)?;
                self.bindings.insert(name.clone(), v.clone());
                Ok(Outcome::Bound(name, v))
            }
            Stmt::Def(def) => {
                let pos = def.pos;
                let name = def.name.clone();
                self.define(def.into()).map_err(|e| EvalError {
                    position: Some(pos),
                    ..e
                })?;
                Ok(Outcome::Defined(name))
            }
            Stmt::Expr(e) => Ok(Outcome::Value(evaluate_value(&e, self)?)),
        }
    }
}

impl From<GrossNumber> for Value {
    fn from(x: GrossNumber) -> Self {
        Value::Number(x)
    }
}

impl From<ProgressionSet> for Value {
    fn from(s: ProgressionSet) -> Self {
        Value::Set(s)
    }
}

/// Evaluates `expr` to a number.
pub fn evaluate(expr: &Expr, env: &Env) -> Result<GrossNumber, EvalError> {
    let v = evaluate_value(expr, env)?;
    into_number(v, expr.pos)
}

/// Evaluation of expressions combining several function applications at
/// different gross points, e.g. `f(a+z2)*(g(y1)/f(a+z1) - 1.25*g(y2)^3)`.
/// Identical to [`evaluate`].
pub fn evaluate_compound(expr: &Expr, env: &Env) -> Result<GrossNumber, EvalError> {
    evaluate(expr, env)
}

pub fn evaluate_value(expr: &Expr, env: &Env) -> Result<Value, EvalError> {
    Evaluator { env }.eval(expr, None, 0)
}

/// Applies `f` at `x`: exactly one branch condition must hold.
pub fn apply_piecewise(
    f: &PiecewiseFn,
    x: &GrossNumber,
    env: &Env,
) -> Result<GrossNumber, EvalError> {
    Evaluator { env }.apply(f, x, 0)
}

fn into_number(v: Value, pos: Position) -> Result<GrossNumber, EvalError> {
    match v {
        Value::Number(x) => Ok(x),
        other => Err(EvalError::at(
            EvalErrorKind::TypeMismatch {
                expected: "number",
                found: other.type_name(),
            },
            pos,
        )),
    }
}

fn into_set(v: Value, pos: Position) -> Result<ProgressionSet, EvalError> {
    match v {
        Value::Set(s) => Ok(s),
        other => Err(EvalError::at(
            EvalErrorKind::TypeMismatch {
                expected: "set",
                found: other.type_name(),
            },
            pos,
        )),
    }
}

fn finite(x: GrossNumber, pos: Position) -> Result<Rational, EvalError> {
    x.as_rational()
        .ok_or_else(|| EvalError::at(EvalErrorKind::NotFinite(x), pos))
}

fn truth(b: bool) -> Value {
    Value::Number(GrossNumber::from_int(b as i64))
}

type Frame<'f> = Option<(&'f str, &'f GrossNumber)>;

struct Evaluator<'e> {
    env: &'e Env,
}

impl Evaluator<'_> {
    fn number(
        &self,
        expr: &Expr,
        frame: Frame<'_>,
        depth: usize,
    ) -> Result<GrossNumber, EvalError> {
        let v = self.eval(expr, frame, depth)?;
        into_number(v, expr.pos)
    }

    fn eval(&self, expr: &Expr, frame: Frame<'_>, depth: usize) -> Result<Value, EvalError> {
        let pos = expr.pos;
        match &expr.kind {
            ExprKind::Literal(q) => Ok(Value::Number(GrossNumber::from_rational(q.clone()))),
            ExprKind::Grossone => Ok(Value::Number(GrossNumber::grossone())),
            ExprKind::Var(name) => {
                match frame {
                    Some((param, x)) if param == name => Ok(Value::Number(x.clone())),
                    _ => self.env.bindings.get(name).cloned().ok_or_else(|| {
                        EvalError::at(EvalErrorKind::UnboundName(name.clone()), pos)
                    }),
                }
            }
            ExprKind::Neg(inner) => Ok(Value::Number(-self.number(inner, frame, depth)?)),
            ExprKind::Binary(op, l, r) => {
                let a = self.number(l, frame, depth)?;
                let b = self.number(r, frame, depth)?;
                let out = match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => match self.env.division {
                        DivisionMode::ExactOnly => {
                            a.exact_divide(&b).map_err(|e| EvalError::at(e, pos))?
                        }
                        DivisionMode::Truncate(n) => {
                            a.divide(&b, n).map_err(|e| EvalError::at(e, pos))?.quotient
                        }
                    },
                    BinOp::Pow => a.power_gross(&b).map_err(|e| EvalError::at(e, pos))?,
                };
                Ok(Value::Number(out))
            }
            ExprKind::Compare(op, l, r) => {
                let a = self.number(l, frame, depth)?;
                let b = self.number(r, frame, depth)?;
                Ok(truth(op.holds(a.cmp(&b))))
            }
            ExprKind::Call(name, args) => {
                let values = args
                    .iter()
                    .map(|a| self.eval(a, frame, depth))
                    .collect::<Result<Vec<_>, _>>()?;
                if BUILTINS.contains(&name.as_str()) {
                    return call_builtin(name, values, args, pos);
                }
                let f = self.env.functions.get(name).ok_or_else(|| {
                    EvalError::at(EvalErrorKind::UnknownFunction(name.clone()), pos)
                })?;
                if values.len() != 1 {
                    return Err(EvalError::at(
                        EvalErrorKind::ArityMismatch {
                            function: name.clone(),
                            expected: "1".into(),
                            found: values.len(),
                        },
                        pos,
                    ));
                }
                let x = into_number(values.into_iter().next().unwrap(), args[0].pos)?;
                self.apply(f, &x, depth + 1)
                    .map(Value::Number)
                    .map_err(|e| EvalError {
                        position: e.position.or(Some(pos)),
                        ..e
                    })
            }
        }
    }

    fn apply(
        &self,
        f: &PiecewiseFn,
        x: &GrossNumber,
        depth: usize,
    ) -> Result<GrossNumber, EvalError> {
        if depth > MAX_CALL_DEPTH {
            return Err(EvalErrorKind::RecursionLimit(MAX_CALL_DEPTH).into());
        }
        let mut chosen = None;
        for branch in &f.branches {
            let holds = match &branch.condition {
                None => true,
                Some(cond) => {
                    let bound = self.number(&cond.bound, None, depth)?;
                    cond.op.holds(x.cmp(&bound))
                }
            };
            if holds {
                if chosen.is_some() {
                    return Err(EvalErrorKind::AmbiguousBranch {
                        function: f.name.clone(),
                        argument: x.clone(),
                    }
                    .into());
                }
                chosen = Some(branch);
            }
        }
        let branch = chosen.ok_or_else(|| EvalErrorKind::NoBranchMatched {
            function: f.name.clone(),
            argument: x.clone(),
        })?;
        self.number(&branch.body, Some((&f.param, x)), depth)
    }
}

/// Names reserved for builtin functions.
pub const BUILTINS: &[&str] = &[
    "naturals",
    "evens",
    "range",
    "progression",
    "count",
    "member",
    "image",
    "remove",
    "insert",
    "product",
    "tuples",
    "prob",
    "finite_part",
    "parity",
];

fn call_builtin(
    name: &str,
    values: Vec<Value>,
    args: &[Expr],
    pos: Position,
) -> Result<Value, EvalError> {
    let arity = |expected: usize| -> Result<(), EvalError> {
        if values.len() == expected {
            Ok(())
        } else {
            Err(EvalError::at(
                EvalErrorKind::ArityMismatch {
                    function: name.to_string(),
                    expected: expected.to_string(),
                    found: values.len(),
                },
                pos,
            ))
        }
    };
    let set_err = |e: SetError| EvalError::at(e, pos);
    let mut it = values.clone().into_iter().zip(args.iter().map(|a| a.pos));
    let mut num = || {
        let (v, p) = it.next().expect("arity checked");
        (v, p)
    };

    match name {
        "naturals" => {
            arity(0)?;
            Ok(Value::Set(ProgressionSet::naturals()))
        }
        "evens" => {
            arity(0)?;
            Ok(Value::Set(ProgressionSet::evens()))
        }
        "range" => {
            arity(2)?;
            let (a, pa) = num();
            let (b, pb) = num();
            let lo = finite(into_number(a, pa)?, pa)?;
            let hi = finite(into_number(b, pb)?, pb)?;
            let count = GrossNumber::from_rational(hi - &lo + Rational::from_integer(1.into()));
            ProgressionSet::new(GrossNumber::from_rational(lo), rational::from_int(1), count)
                .map(Value::Set)
                .map_err(set_err)
        }
        "progression" => {
            arity(3)?;
            let (s, ps) = num();
            let (d, pd) = num();
            let (c, pc) = num();
            let start = into_number(s, ps)?;
            let step = finite(into_number(d, pd)?, pd)?;
            let count = into_number(c, pc)?;
            ProgressionSet::new(start, step, count)
                .map(Value::Set)
                .map_err(set_err)
        }
        "count" => {
            arity(1)?;
            let (s, ps) = num();
            Ok(Value::Number(setcalc::count(&into_set(s, ps)?)))
        }
        "member" => {
            arity(2)?;
            let (x, px) = num();
            let (s, ps) = num();
            let x = into_number(x, px)?;
            Ok(truth(setcalc::member(&x, &into_set(s, ps)?)))
        }
        "image" => {
            arity(3)?;
            let (s, ps) = num();
            let (a, pa) = num();
            let (b, pb) = num();
            let s = into_set(s, ps)?;
            let a = finite(into_number(a, pa)?, pa)?;
            let b = finite(into_number(b, pb)?, pb)?;
            s.affine_image(&a, &b).map(Value::Set).map_err(set_err)
        }
        "remove" | "insert" => {
            arity(2)?;
            let (s, ps) = num();
            let (x, px) = num();
            let s = into_set(s, ps)?;
            let x = into_number(x, px)?;
            let r = if name == "remove" {
                s.remove_one(&x)
            } else {
                s.add_one(&x)
            };
            r.map(Value::Number).map_err(set_err)
        }
        "product" => {
            let counts = values
                .into_iter()
                .zip(args)
                .map(|(v, a)| into_number(v, a.pos))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Value::Number(setcalc::product_count(&counts)))
        }
        "tuples" => {
            arity(2)?;
            let (b, pb) = num();
            let (l, pl) = num();
            let b = into_number(b, pb)?;
            let l = into_number(l, pl)?;
            setcalc::tuple_space_count(&b, &l)
                .map(Value::Number)
                .map_err(set_err)
        }
        "prob" => {
            arity(2)?;
            let (k, pk) = num();
            let (m, pm) = num();
            let model =
                ProbabilityModel::new(into_number(k, pk)?, into_number(m, pm)?).map_err(set_err)?;
            model.probability().map(Value::Number).map_err(set_err)
        }
        "finite_part" => {
            arity(1)?;
            let (x, px) = num();
            Ok(Value::Number(into_number(x, px)?.finite_part()))
        }
        "parity" => {
            arity(1)?;
            let (x, px) = num();
            let p = into_number(x, px)?
                .parity()
                .map_err(|e| EvalError::at(e, px))?;
            Ok(truth(p == Parity::Odd))
        }
        _ => Err(EvalError::at(
            EvalErrorKind::UnknownFunction(name.to_string()),
            pos,
        )),
    }
}

impl From<GrossError> for EvalError {
    fn from(e: GrossError) -> Self {
        EvalErrorKind::Arithmetic(e).into()
    }
}

impl From<SetError> for EvalError {
    fn from(e: SetError) -> Self {
        EvalErrorKind::Set(e).into()
    }
}
