//! Core syntax: primitive values, events, traces, and the expression
//! language of event-driven programs.

mod parser;
mod pretty;

pub use parser::{parse_program, ParseError};

use std::fmt;
use std::sync::Arc;

/// The single network output channel. Events on it are observable outputs;
/// every other channel carries inputs.
pub const NETOUT: &str = "netout";

pub fn is_output_channel(ch: &str) -> bool {
    ch == NETOUT
}

/// First-order values: integers, booleans, unit, and constructed terms.
/// Integers are 32-bit two's complement with wrapping arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Primitive {
    Int(i32),
    Bool(bool),
    Unit,
    Cons(String, Vec<Primitive>),
}

impl Primitive {
    /// Coarse shape used for operator kind checks and error messages.
    pub fn kind(&self) -> &'static str {
        match self {
            Primitive::Int(_) => "int",
            Primitive::Bool(_) => "bool",
            Primitive::Unit => "unit",
            Primitive::Cons(..) => "constructor",
        }
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::Int(n) => write!(f, "{n}"),
            Primitive::Bool(b) => write!(f, "{b}"),
            Primitive::Unit => write!(f, "unit"),
            Primitive::Cons(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// One visible trace entry: an event `channel!value`. The silent step is not
/// stored in traces; step functions signal it with `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Event {
    pub channel: String,
    pub value: Primitive,
}

impl Event {
    pub fn new(channel: impl Into<String>, value: Primitive) -> Self {
        Event { channel: channel.into(), value }
    }

    pub fn is_output(&self) -> bool {
        is_output_channel(&self.channel)
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}!{}", self.channel, self.value)
    }
}

/// A finite sequence of visible events. Silent steps are dropped at
/// construction, so a stored trace never contains them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Trace(pub Vec<Event>);

impl Trace {
    pub fn new() -> Self {
        Trace(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Append the visible part of a step; `None` is the silent step.
    pub fn push_step(&mut self, step: Option<Event>) {
        if let Some(ev) = step {
            self.0.push(ev);
        }
    }

    /// Append every visible event of `steps`, dropping silent ones.
    pub fn extend_steps(&mut self, steps: impl IntoIterator<Item = Option<Event>>) {
        for s in steps {
            self.push_step(s);
        }
    }
}

/// Concatenation of visible traces. Inputs are already silent-free, so this
/// is plain appending; combined with [`Trace::extend_steps`] it gives the
/// silent-dropping concatenation over raw step sequences.
pub fn trace_concat(a: &Trace, b: &Trace) -> Trace {
    let mut out = a.clone();
    out.0.extend(b.0.iter().cloned());
    out
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ev) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{ev}")?;
        }
        Ok(())
    }
}

/// Binary operators. `&&` and `||` evaluate both operands (no short
/// circuiting); `&` and `|` are bitwise on integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Lt,
    Le,
    Eq,
    Ne,
    BitAnd,
    BitOr,
    And,
    Or,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::BitAnd => "&",
            BinOp::BitOr => "|",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Runtime values of the concrete machine: primitives, store locations, and
/// closures. The machine substitutes values for variables, so closure bodies
/// are closed except for the parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Prim(Primitive),
    Loc(u32),
    Closure(String, Arc<Expr>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Prim(p) => p.kind(),
            Value::Loc(_) => "location",
            Value::Closure(..) => "function",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Prim(p) => write!(f, "{p}"),
            Value::Loc(l) => write!(f, "<loc {l}>"),
            Value::Closure(x, _) => write!(f, "<fun {x}>"),
        }
    }
}

/// Expressions. `RtValue` carries an already-computed runtime value planted
/// by substitution; the parser never produces it.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Lit(Primitive),
    Var(String),
    Lambda(String, Arc<Expr>),
    App(Arc<Expr>, Arc<Expr>),
    Ref(Arc<Expr>),
    Deref(Arc<Expr>),
    Assign(Arc<Expr>, Arc<Expr>),
    If(Arc<Expr>, Arc<Expr>, Arc<Expr>),
    Op(BinOp, Arc<Expr>, Arc<Expr>),
    Cons(String, Vec<Expr>),
    Proj(String, usize, Arc<Expr>),
    Install(String, Arc<Expr>),
    Send(String, Arc<Expr>),
    Secret(String),
    RtValue(Value),
}

impl Expr {
    /// Free variables of the expression.
    pub fn free_vars(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut std::collections::BTreeSet<String>) {
        match self {
            Expr::Lit(_) | Expr::Secret(_) | Expr::RtValue(_) => {}
            Expr::Var(x) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            Expr::Lambda(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Expr::App(a, b) | Expr::Assign(a, b) | Expr::Op(_, a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Expr::Ref(e) | Expr::Deref(e) | Expr::Proj(_, _, e) => e.collect_free(bound, out),
            Expr::If(c, t, e) => {
                c.collect_free(bound, out);
                t.collect_free(bound, out);
                e.collect_free(bound, out);
            }
            Expr::Cons(_, args) => {
                for a in args {
                    a.collect_free(bound, out);
                }
            }
            Expr::Install(_, e) | Expr::Send(_, e) => e.collect_free(bound, out),
        }
    }
}

/// Capture-free substitution of a runtime value for a variable.
///
/// Substituted values are closed (primitives, locations, or closures whose
/// bodies were themselves built by substitution), so no renaming is needed;
/// the walk stops at a binder that shadows `x`. A primitive value is planted
/// as a literal so substituted terms remain printable.
pub fn subst(e: &Expr, x: &str, v: &Value) -> Expr {
    match e {
        Expr::Lit(_) | Expr::Secret(_) | Expr::RtValue(_) => e.clone(),
        Expr::Var(y) => {
            if y == x {
                match v {
                    Value::Prim(p) => Expr::Lit(p.clone()),
                    other => Expr::RtValue(other.clone()),
                }
            } else {
                e.clone()
            }
        }
        Expr::Lambda(y, body) => {
            if y == x {
                e.clone()
            } else {
                Expr::Lambda(y.clone(), Arc::new(subst(body, x, v)))
            }
        }
        Expr::App(a, b) => Expr::App(Arc::new(subst(a, x, v)), Arc::new(subst(b, x, v))),
        Expr::Ref(a) => Expr::Ref(Arc::new(subst(a, x, v))),
        Expr::Deref(a) => Expr::Deref(Arc::new(subst(a, x, v))),
        Expr::Assign(a, b) => Expr::Assign(Arc::new(subst(a, x, v)), Arc::new(subst(b, x, v))),
        Expr::If(c, t, el) => Expr::If(
            Arc::new(subst(c, x, v)),
            Arc::new(subst(t, x, v)),
            Arc::new(subst(el, x, v)),
        ),
        Expr::Op(op, a, b) => Expr::Op(*op, Arc::new(subst(a, x, v)), Arc::new(subst(b, x, v))),
        Expr::Cons(name, args) => {
            Expr::Cons(name.clone(), args.iter().map(|a| subst(a, x, v)).collect())
        }
        Expr::Proj(name, i, a) => Expr::Proj(name.clone(), *i, Arc::new(subst(a, x, v))),
        Expr::Install(ch, a) => Expr::Install(ch.clone(), Arc::new(subst(a, x, v))),
        Expr::Send(ch, a) => Expr::Send(ch.clone(), Arc::new(subst(a, x, v))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i32) -> Expr {
        Expr::Lit(Primitive::Int(n))
    }

    #[test]
    fn subst_under_binder() {
        // (fun y -> x + y){x := 3}  ==>  fun y -> 3 + y
        let e = Expr::Lambda(
            "y".into(),
            Arc::new(Expr::Op(
                BinOp::Add,
                Arc::new(Expr::Var("x".into())),
                Arc::new(Expr::Var("y".into())),
            )),
        );
        let got = subst(&e, "x", &Value::Prim(Primitive::Int(3)));
        let want = Expr::Lambda(
            "y".into(),
            Arc::new(Expr::Op(
                BinOp::Add,
                Arc::new(int(3)),
                Arc::new(Expr::Var("y".into())),
            )),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn subst_stops_at_shadowing_binder() {
        // (fun x -> x){x := 5} is unchanged
        let e = Expr::Lambda("x".into(), Arc::new(Expr::Var("x".into())));
        let got = subst(&e, "x", &Value::Prim(Primitive::Int(5)));
        assert_eq!(got, e);
    }

    #[test]
    fn subst_location_value() {
        let e = Expr::Assign(Arc::new(Expr::Var("r".into())), Arc::new(int(1)));
        let got = subst(&e, "r", &Value::Loc(7));
        assert_eq!(
            got,
            Expr::Assign(Arc::new(Expr::RtValue(Value::Loc(7))), Arc::new(int(1)))
        );
    }

    #[test]
    fn trace_concat_appends() {
        let a = Trace(vec![Event::new("id", Primitive::Int(0))]);
        let b = Trace(vec![Event::new(NETOUT, Primitive::Int(1))]);
        let c = trace_concat(&a, &b);
        assert_eq!(c.len(), 2);
        assert_eq!(c.to_string(), "id!0, netout!1");
    }

    #[test]
    fn silent_steps_vanish_in_concatenation() {
        let mut t = Trace(vec![Event::new("id", Primitive::Int(0))]);
        // A step sequence consisting of one silent step contributes nothing.
        t.extend_steps([None]);
        assert_eq!(t.to_string(), "id!0");
        t.extend_steps([None, Some(Event::new("a", Primitive::Bool(true))), None]);
        assert_eq!(t.to_string(), "id!0, a!true");
    }

    #[test]
    fn display_forms() {
        assert_eq!(Primitive::Cons("Pair".into(), vec![Primitive::Int(1), Primitive::Unit]).to_string(), "Pair(1, unit)");
        assert_eq!(Event::new("idBox", Primitive::Bool(true)).to_string(), "idBox!true");
    }
}
