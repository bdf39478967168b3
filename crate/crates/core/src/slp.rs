//! Straight-line programs for `p(z)` and their compilation into ruler
//! constructions on the axis `y = 0`.
//!
//! A value `v ∈ K` lives on the axis as the point `(v : 0 : 1)`; the axis
//! frame is `0 = (0:0:1)`, `1 = (1:0:1)`, `∞ = (1:0:0)`. Each arithmetic
//! instruction is realized by a small gadget of lines whose auxiliary data is
//! a single rational height `h`, so every emitted line is defined over `K`
//! with Galois-stable free parameters.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::configuration::{derive_points, AxisPoints, Configuration, Provenance, RETRY_BUDGET};
use crate::error::{Error, Result};
use crate::numberfield::{NFElement, NumberField, Poly, Rational};
use crate::projgeom::{join, meet, ProjLine, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instr {
    LoadZ,
    /// A positive integer constant.
    Const(BigInt),
    Add(usize, usize),
    Mul(usize, usize),
    Neg(usize),
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instr::LoadZ => write!(f, "LoadZ"),
            Instr::Const(c) => write!(f, "Const({c})"),
            Instr::Add(i, j) => write!(f, "Add(r{i},r{j})"),
            Instr::Mul(i, j) => write!(f, "Mul(r{i},r{j})"),
            Instr::Neg(i) => write!(f, "Neg(r{i})"),
        }
    }
}

/// Register `k` holds the value of instruction `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slp {
    pub instructions: Vec<Instr>,
    pub result: usize,
}

impl Slp {
    /// Evaluate every register at `z`.
    pub fn evaluate(&self, z: &NFElement) -> Vec<NFElement> {
        let field = z.field();
        let mut regs: Vec<NFElement> = Vec::with_capacity(self.instructions.len());
        for ins in &self.instructions {
            let v = match ins {
                Instr::LoadZ => z.clone(),
                Instr::Const(c) => field.from_rational(Rational::from_integer(c.clone())),
                Instr::Add(i, j) => &regs[*i] + &regs[*j],
                Instr::Mul(i, j) => &regs[*i] * &regs[*j],
                Instr::Neg(i) => -&regs[*i],
            };
            regs.push(v);
        }
        regs
    }

    /// Operands reference earlier registers only.
    pub fn is_topological(&self) -> bool {
        self.instructions.iter().enumerate().all(|(k, ins)| match ins {
            Instr::Add(i, j) | Instr::Mul(i, j) => *i < k && *j < k,
            Instr::Neg(i) => *i < k,
            _ => true,
        }) && self.result < self.instructions.len()
    }
}

/// Horner-form program computing `p(z)` for the primitive integer form of `p`.
pub fn compile_polynomial(p: &Poly) -> Result<Slp> {
    let deg = p.degree().unwrap_or(0);
    if deg < 2 {
        return Err(Error::TrivialField(deg));
    }
    let c = p.primitive_integer();
    let mut ins = Vec::new();
    let push = |ins: &mut Vec<Instr>, i: Instr| {
        ins.push(i);
        ins.len() - 1
    };
    let z = push(&mut ins, Instr::LoadZ);
    let constant = |ins: &mut Vec<Instr>, v: &BigInt| -> usize {
        let r = ins.len();
        ins.push(Instr::Const(v.abs()));
        if v.is_negative() {
            ins.push(Instr::Neg(r));
            r + 1
        } else {
            r
        }
    };
    // None stands for an accumulator equal to 1
    let mut acc: Option<usize> = if c[deg].is_one() { None } else { Some(constant(&mut ins, &c[deg])) };
    for k in (0..deg).rev() {
        let prod = match acc {
            None => z,
            Some(a) => push(&mut ins, Instr::Mul(a, z)),
        };
        acc = Some(if c[k].is_zero() {
            prod
        } else {
            let r = constant(&mut ins, &c[k]);
            push(&mut ins, Instr::Add(prod, r))
        });
    }
    let result = acc.unwrap();
    Ok(Slp { instructions: ins, result })
}

/// The axis point `(v : 0 : 1)` of a value.
pub fn register_point(v: &NFElement) -> ProjPoint {
    ProjPoint::affine(v.clone(), v.field().zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    Add,
    Mul,
    Neg,
    Const,
}

/// The lines one instruction contributed.
#[derive(Clone, Debug)]
pub struct GadgetTrace {
    pub kind: GadgetKind,
    pub inputs: Vec<usize>,
    pub output: Option<usize>,
    pub emitted_lines: Vec<ProjLine>,
    pub aux_params: Vec<Rational>,
    /// The constructed output point on the axis.
    pub output_point: ProjPoint,
}

fn degenerate(what: &str) -> Error {
    Error::GadgetDegenerate(what.to_string())
}

fn geo<T>(r: Result<T>, what: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::DegenerateJoin | Error::DegenerateMeet => degenerate(what),
        other => other,
    })
}

fn y_axis(field: &Arc<NumberField>) -> ProjLine {
    ProjLine::from_ints(field, [1, 0, 0])
}

/// Parallelogram addition. With `P = (0 : h : 1)` and `Q = (b, h)`, the line
/// through `Q` parallel to `P·A` meets the axis at `a + b`.
pub fn emit_add_gadget(a: &NFElement, b: &NFElement, h: &Rational) -> Result<GadgetTrace> {
    let k = a.field();
    if h.is_zero() {
        return Err(degenerate("add: zero height"));
    }
    if a.is_zero() {
        return Err(degenerate("add: a = 0 makes P·A the y-axis"));
    }
    if b.is_zero() {
        return Err(degenerate("add: b = 0 puts Q on P"));
    }
    let ax = AxisPoints::new(k);
    let vertical = ProjPoint::from_ints(k, [0, 1, 0]);
    let p = ProjPoint::affine(k.zero(), k.from_rational(h.clone()));
    let pa = register_point(a);
    let pb = register_point(b);

    let l1 = geo(join(&ax.zero, &p), "add: L1")?;
    let l2 = geo(join(&pb, &vertical), "add: L2")?;
    let horizontal = geo(join(&p, &ax.inf), "add: horizontal")?;
    let q = geo(meet(&l2, &horizontal), "add: Q")?;
    let l3 = geo(join(&p, &pa), "add: L3")?;
    if l3 == l1 {
        return Err(degenerate("add: L3 coincides with L1"));
    }
    let l4 = geo(join(&q, &geo(l3.direction(), "add: direction")?), "add: L4")?;
    let out = geo(meet(&l4, &ax.axis), "add: output")?;
    Ok(GadgetTrace {
        kind: GadgetKind::Add,
        inputs: Vec::new(),
        output: None,
        emitted_lines: vec![l1, l2, l3, l4, horizontal],
        aux_params: vec![h.clone()],
        output_point: out,
    })
}

/// Similar-triangle multiplication. With `U = (0 : h : 1)`, the parallel to
/// `U·1` through `B` meets the y-axis at `R = (0 : bh : 1)`, and the parallel
/// to `U·A` through `R` meets the axis at `ab`. For `h = 1` the first
/// parallel class is the slope −1 pencil `(1 : −1 : 0)`.
pub fn emit_mul_gadget(a: &NFElement, b: &NFElement, h: &Rational) -> Result<GadgetTrace> {
    let k = a.field();
    if h.is_zero() {
        return Err(degenerate("mul: zero height"));
    }
    if a.is_zero() || b.is_zero() {
        return Err(degenerate("mul: zero factor"));
    }
    if b.is_one() {
        return Err(degenerate("mul: R coincides with U"));
    }
    let ax = AxisPoints::new(k);
    let u = ProjPoint::affine(k.zero(), k.from_rational(h.clone()));
    let pa = register_point(a);
    let pb = register_point(b);

    let l_a = geo(join(&u, &pa), "mul: U·A")?;
    let l_one = geo(join(&u, &ax.one), "mul: U·1")?;
    let l_b = geo(join(&pb, &geo(l_one.direction(), "mul: direction")?), "mul: transfer")?;
    let r = geo(meet(&l_b, &y_axis(k)), "mul: R")?;
    let l_out = geo(join(&r, &geo(l_a.direction(), "mul: direction")?), "mul: output line")?;
    let out = geo(meet(&l_out, &ax.axis), "mul: output")?;
    Ok(GadgetTrace {
        kind: GadgetKind::Mul,
        inputs: Vec::new(),
        output: None,
        emitted_lines: vec![l_a, l_one, l_b, l_out],
        aux_params: vec![h.clone()],
        output_point: out,
    })
}

/// Two reflections: slope −1 from `(b, 0)` to `(0, b)`, then slope +1 back
/// down to `(−b, 0)`.
pub fn emit_neg_gadget(b: &NFElement) -> Result<GadgetTrace> {
    let k = b.field();
    if b.is_zero() {
        return Err(degenerate("neg: b = 0"));
    }
    let ax = AxisPoints::new(k);
    let down = ProjPoint::from_ints(k, [-1, 1, 0]);
    let up = ProjPoint::from_ints(k, [1, 1, 0]);
    let l1 = geo(join(&register_point(b), &down), "neg: first reflection")?;
    let r = geo(meet(&l1, &y_axis(k)), "neg: y-axis point")?;
    let l2 = geo(join(&r, &up), "neg: second reflection")?;
    let out = geo(meet(&l2, &ax.axis), "neg: output")?;
    Ok(GadgetTrace {
        kind: GadgetKind::Neg,
        inputs: Vec::new(),
        output: None,
        emitted_lines: vec![l1, l2],
        aux_params: Vec::new(),
        output_point: out,
    })
}

/// Deterministic gadget heights `h_k = 1 + seed + k`.
#[derive(Clone, Debug)]
pub struct ParamStream {
    seed: i64,
    next: i64,
    pub retries: u32,
}

impl ParamStream {
    pub fn new(seed: i64) -> Self {
        ParamStream { seed, next: 0, retries: 0 }
    }

    pub fn next_height(&mut self) -> Rational {
        let h = 1 + self.seed + self.next;
        self.next += 1;
        Rational::from_integer(h.into())
    }

    /// Run `gadget` with fresh heights until it is nondegenerate.
    pub fn with_retry(&mut self, mut gadget: impl FnMut(&Rational) -> Result<GadgetTrace>) -> Result<GadgetTrace> {
        let mut last = None;
        for attempt in 0..RETRY_BUDGET {
            let h = self.next_height();
            match gadget(&h) {
                Ok(t) => return Ok(t),
                Err(Error::GadgetDegenerate(msg)) => {
                    if attempt + 1 < RETRY_BUDGET {
                        self.retries += 1;
                    }
                    last = Some(msg);
                }
                Err(e) => return Err(e),
            }
        }
        Err(Error::GenericityExhausted(last.unwrap_or_default()))
    }
}

/// Build a positive integer on the axis from the unit point by doubling and adding.
pub fn emit_const_gadget(field: &Arc<NumberField>, c: &BigInt, stream: &mut ParamStream) -> Result<GadgetTrace> {
    let one = field.one();
    let mut trace = GadgetTrace {
        kind: GadgetKind::Const,
        inputs: Vec::new(),
        output: None,
        emitted_lines: Vec::new(),
        aux_params: Vec::new(),
        output_point: register_point(&one),
    };
    let bits = c.bits();
    let mut value = one.clone();
    let absorb = |trace: &mut GadgetTrace, t: GadgetTrace| {
        trace.emitted_lines.extend(t.emitted_lines);
        trace.aux_params.extend(t.aux_params);
        trace.output_point = t.output_point;
    };
    for bit in (0..bits.saturating_sub(1)).rev() {
        let t = stream.with_retry(|h| emit_add_gadget(&value, &value, h))?;
        value = &value + &value;
        absorb(&mut trace, t);
        if c.bit(bit) {
            let t = stream.with_retry(|h| emit_add_gadget(&value, &one, h))?;
            value = &value + &one;
            absorb(&mut trace, t);
        }
    }
    Ok(trace)
}

/// The gadget configuration for `slp` together with its per-instruction traces.
#[derive(Clone, Debug)]
pub struct GadgetBuild {
    pub configuration: Configuration,
    pub traces: Vec<GadgetTrace>,
    pub register_points: Vec<ProjPoint>,
}

/// Run every instruction through its gadget, check that the result register
/// lands on the origin, and collect the axis, the y-axis and all gadget lines.
pub fn emit_configuration(slp: &Slp, field: &Arc<NumberField>, seed: i64) -> Result<GadgetBuild> {
    let z = field.gen();
    let values = slp.evaluate(&z);
    let mut stream = ParamStream::new(seed);
    let mut traces: Vec<GadgetTrace> = Vec::new();
    let mut points: Vec<ProjPoint> = Vec::with_capacity(values.len());

    for (k, ins) in slp.instructions.iter().enumerate() {
        let mut trace = match ins {
            Instr::LoadZ => {
                points.push(register_point(&z));
                continue;
            }
            Instr::Const(c) => emit_const_gadget(field, c, &mut stream)?,
            Instr::Add(i, j) => stream.with_retry(|h| emit_add_gadget(&values[*i], &values[*j], h))?,
            Instr::Mul(i, j) => {
                // the gadget needs its second factor ≠ 1
                let (a, b) = if values[*j].is_one() { (*j, *i) } else { (*i, *j) };
                stream.with_retry(|h| emit_mul_gadget(&values[a], &values[b], h))?
            }
            Instr::Neg(i) => emit_neg_gadget(&values[*i])?,
        };
        trace.inputs = match ins {
            Instr::Add(i, j) | Instr::Mul(i, j) => vec![*i, *j],
            Instr::Neg(i) => vec![*i],
            _ => Vec::new(),
        };
        trace.output = Some(k);
        if k != slp.result && trace.output_point != register_point(&values[k]) {
            return Err(degenerate(&format!("register r{k} constructed off its value")));
        }
        points.push(trace.output_point.clone());
        traces.push(trace);
    }

    let axis = AxisPoints::new(field);
    if points[slp.result] != axis.zero {
        return Err(Error::NotARoot);
    }
    // z ∉ {0, 1} in a field; a zero divisor here exposes a factor of the modulus
    z.inv()?;
    (&z - &field.one()).inv()?;

    let mut lines: Vec<ProjLine> = vec![axis.axis.clone(), y_axis(field)];
    for t in &traces {
        for l in &t.emitted_lines {
            if !lines.contains(l) {
                lines.push(l.clone());
            }
        }
    }
    let mut configuration = derive_points(field, &lines)?;
    configuration.provenance = Provenance { seed, gadget_retries: stream.retries, generic_retries: 0 };
    configuration.marks = configuration.locate_marks(&register_point(&z));
    if configuration.marks.is_none() {
        return Err(degenerate("a marked axis point is not a configuration point"));
    }
    Ok(GadgetBuild { configuration, traces, register_points: points })
}
