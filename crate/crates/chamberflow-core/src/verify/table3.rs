//! Literal transcriptions of the published closed-form chamber fields,
//! stored as data for the audit in [`super`].
//!
//! Each row records the printed terms of both field components verbatim:
//! signs, coefficients (possibly affine in the row parameters `q`, `j`),
//! trig function, and argument. Rows printed with an overall scalar factor
//! are stored with that factor distributed over the terms. No editorial
//! correction is applied here — where the printed table disagrees with the
//! field generated from the multiplicity data, the audit reports it.

/// √3 to f64 precision (the same literal the catalog's root bases use).
pub const S3: f64 = 1.732_050_807_568_877_2;

/// Trigonometric function of a printed term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigFunc {
    /// `cot` (vertical barrier derivative).
    Cot,
    /// `tan` (horizontal barrier derivative).
    Tan,
}

impl TrigFunc {
    /// Lower-case name as used in term descriptors.
    pub fn name(self) -> &'static str {
        match self {
            TrigFunc::Cot => "cot",
            TrigFunc::Tan => "tan",
        }
    }

    /// Evaluate at an angle.
    pub fn eval(self, x: f64) -> f64 {
        match self {
            TrigFunc::Cot => x.cos() / x.sin(),
            TrigFunc::Tan => x.tan(),
        }
    }
}

/// A coefficient affine in the row parameters: `q·q + j·j + c`.
#[derive(Debug, Clone, Copy)]
pub struct Coeff {
    /// Weight of the parameter `q`.
    pub q: f64,
    /// Weight of the parameter `j`.
    pub j: f64,
    /// Constant part.
    pub c: f64,
}

impl Coeff {
    /// Evaluate at parameter values.
    pub fn eval(&self, q: f64, j: f64) -> f64 {
        self.q * q + self.j * j + self.c
    }
}

/// One printed term: `coeff · func(arg₁·x₁ + arg₂·x₂)`.
#[derive(Debug, Clone, Copy)]
pub struct TermSpec {
    /// Printed coefficient.
    pub coeff: Coeff,
    /// `cot` or `tan`.
    pub func: TrigFunc,
    /// Argument functional `(c₁, c₂)`.
    pub arg: [f64; 2],
}

impl TermSpec {
    /// Evaluate at a point and parameter values.
    pub fn eval(&self, y: &[f64], q: f64, j: f64) -> f64 {
        self.coeff.eval(q, j) * self.func.eval(self.arg[0] * y[0] + self.arg[1] * y[1])
    }
}

/// A transcribed table row: the two field components as printed.
#[derive(Debug, Clone, Copy)]
pub struct Table3Row {
    /// Catalog name of the action the row belongs to.
    pub name: &'static str,
    /// First-component terms.
    pub x1: &'static [TermSpec],
    /// Second-component terms.
    pub x2: &'static [TermSpec],
}

/// Look up the transcription for a catalog row name.
pub fn transcription_for(name: &str) -> Option<&'static Table3Row> {
    TABLE3.iter().find(|r| r.name == name)
}

const fn k(c: f64) -> Coeff {
    Coeff { q: 0.0, j: 0.0, c }
}

const fn qk(q: f64, c: f64) -> Coeff {
    Coeff { q, j: 0.0, c }
}

const fn jk(j: f64, c: f64) -> Coeff {
    Coeff { q: 0.0, j, c }
}

const fn qjk(q: f64, j: f64, c: f64) -> Coeff {
    Coeff { q, j, c }
}

const fn cot(coeff: Coeff, a1: f64, a2: f64) -> TermSpec {
    TermSpec {
        coeff,
        func: TrigFunc::Cot,
        arg: [a1, a2],
    }
}

const fn tan(coeff: Coeff, a1: f64, a2: f64) -> TermSpec {
    TermSpec {
        coeff,
        func: TrigFunc::Tan,
        arg: [a1, a2],
    }
}

/// All 35 catalog rows' published fields, transcribed term by term.
///
/// (The published table carries one further row — the `q = 2` orthogonal
/// specialization of the fourth entry — that the catalog does not include;
/// it has no transcription here.)
pub static TABLE3: &[Table3Row] = &[
    Table3Row {
        name: "rho1-SU3-SO3",
        x1: &[
            tan(k(1.0), 1.0, S3),
            cot(k(-2.0), 2.0, 0.0),
            tan(k(1.0), 1.0, -S3),
        ],
        x2: &[tan(k(S3), 1.0, S3), tan(k(-S3), 1.0, -S3)],
    },
    Table3Row {
        name: "SO6-SU6-Sp3",
        x1: &[
            cot(k(-4.0), 2.0, 0.0),
            cot(k(-2.0), 1.0, -S3),
            cot(k(-2.0), 1.0, S3),
            tan(k(4.0), 2.0, 0.0),
            tan(k(2.0), 1.0, -S3),
            tan(k(2.0), 1.0, S3),
        ],
        x2: &[
            cot(k(2.0 * S3), 1.0, -S3),
            cot(k(-2.0 * S3), 1.0, S3),
            tan(k(-2.0 * S3), 1.0, -S3),
            tan(k(2.0 * S3), 1.0, S3),
        ],
    },
    Table3Row {
        // The printed first component ends in "+4cot(x1+√3x2)" where the
        // multiplicity data generates a tan term; transcribed as printed.
        name: "rho2-SU6-Sp3",
        x1: &[
            cot(k(-8.0), 2.0, 0.0),
            tan(k(4.0), 1.0, -S3),
            cot(k(4.0), 1.0, S3),
        ],
        x2: &[tan(k(4.0 * S3), 1.0, S3), tan(k(-4.0 * S3), 1.0, -S3)],
    },
    Table3Row {
        name: "SOq2-SUq2-SU2Uq",
        x1: &[
            cot(qk(-1.0, 2.0), 1.0, 0.0),
            cot(k(1.0), 1.0, -1.0),
            cot(k(-1.0), 1.0, 1.0),
            tan(qk(1.0, -2.0), 1.0, 0.0),
            tan(k(1.0), 1.0, -1.0),
            tan(k(1.0), 1.0, 1.0),
            tan(k(2.0), 2.0, 0.0),
        ],
        x2: &[
            cot(k(1.0), 1.0, -1.0),
            cot(qk(-1.0, 2.0), 0.0, 1.0),
            cot(k(-1.0), 1.0, 1.0),
            tan(k(-1.0), 1.0, -1.0),
            tan(qk(1.0, -2.0), 0.0, 1.0),
            tan(k(1.0), 1.0, 1.0),
            tan(k(2.0), 0.0, 2.0),
        ],
    },
    Table3Row {
        name: "SUj1xUqj1-SUq2-SU2Uq",
        x1: &[
            cot(jk(-2.0, 2.0), 1.0, 0.0),
            cot(k(-2.0), 2.0, 0.0),
            tan(qjk(2.0, -2.0, -2.0), 1.0, 0.0),
            tan(k(2.0), 1.0, -1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
        x2: &[
            cot(qjk(-2.0, 2.0, 2.0), 0.0, 1.0),
            cot(k(-2.0), 0.0, 2.0),
            tan(k(-2.0), 1.0, -1.0),
            tan(jk(2.0, -2.0), 0.0, 1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "SU2U2-SU4-SU2U2",
        x1: &[
            cot(k(-1.0), 1.0, 0.0),
            tan(k(1.0), 1.0, 0.0),
            tan(k(1.0), 1.0, -1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(-1.0), 0.0, 1.0),
            tan(k(-1.0), 1.0, -1.0),
            tan(k(1.0), 0.0, 1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "SOj1xSOqj1-SOq2-SO2SOq",
        x1: &[
            cot(jk(-1.0, 1.0), 1.0, 0.0),
            tan(qjk(1.0, -1.0, -1.0), 1.0, 0.0),
            tan(k(1.0), 1.0, -1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
        x2: &[
            cot(qjk(-1.0, 1.0, 1.0), 0.0, 1.0),
            tan(k(-1.0), 1.0, -1.0),
            tan(jk(1.0, -1.0), 0.0, 1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        // Both components print "-2cot(x1+x2)" where the long root's unit
        // vertical multiplicity generates coefficient -1; kept as printed.
        name: "SO4xSO4-SO8-U4",
        x1: &[
            cot(k(-2.0), 1.0, 0.0),
            cot(k(-1.0), 1.0, -1.0),
            cot(k(-2.0), 1.0, 1.0),
            tan(k(2.0), 1.0, 0.0),
        ],
        x2: &[
            cot(k(1.0), 1.0, -1.0),
            cot(k(-2.0), 0.0, 1.0),
            cot(k(-2.0), 1.0, 1.0),
            tan(k(2.0), 0.0, 1.0),
        ],
    },
    Table3Row {
        name: "rho3-SO8-U4",
        x1: &[
            cot(k(-2.0), 1.0, 0.0),
            tan(k(2.0), 1.0, 0.0),
            tan(k(1.0), 1.0, -1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(-2.0), 0.0, 1.0),
            tan(k(-1.0), 1.0, -1.0),
            tan(k(2.0), 0.0, 1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "rho4-SO8-U4",
        x1: &[
            cot(k(-1.0), 1.0, 0.0),
            tan(k(3.0), 1.0, 0.0),
            tan(k(1.0), 1.0, -1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(-1.0), 0.0, 1.0),
            tan(k(-1.0), 1.0, -1.0),
            tan(k(3.0), 0.0, 1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        // Printed with an overall factor 2, distributed here.
        name: "SO4xSO6-SO10-U5",
        x1: &[
            cot(k(-2.0), 1.0, 0.0),
            cot(k(-2.0), 1.0, -1.0),
            cot(k(-2.0), 1.0, 1.0),
            cot(k(-2.0), 2.0, 0.0),
            tan(k(2.0), 1.0, 0.0),
            tan(k(2.0), 1.0, -1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(2.0), 1.0, -1.0),
            cot(k(-2.0), 0.0, 1.0),
            cot(k(-2.0), 1.0, 1.0),
            cot(k(-2.0), 0.0, 2.0),
            tan(k(-2.0), 1.0, -1.0),
            tan(k(2.0), 0.0, 1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        // Printed with an overall factor 2, distributed here.
        name: "SO5xSO5-SO10-U5",
        x1: &[
            cot(k(-2.0), 1.0, 0.0),
            cot(k(-2.0), 1.0, -1.0),
            cot(k(-2.0), 1.0, 1.0),
            tan(k(2.0), 1.0, 0.0),
            tan(k(2.0), 1.0, -1.0),
            tan(k(2.0), 1.0, 1.0),
            tan(k(2.0), 2.0, 0.0),
        ],
        x2: &[
            cot(k(2.0), 1.0, -1.0),
            cot(k(-2.0), 0.0, 1.0),
            cot(k(-2.0), 1.0, 1.0),
            tan(k(-2.0), 1.0, -1.0),
            tan(k(2.0), 0.0, 1.0),
            tan(k(2.0), 1.0, 1.0),
            tan(k(2.0), 0.0, 2.0),
        ],
    },
    Table3Row {
        // Printed with an overall factor 2, distributed here.
        name: "rho5-SO10-U5",
        x1: &[
            cot(k(-4.0), 1.0, 0.0),
            cot(k(-2.0), 2.0, 0.0),
            tan(k(4.0), 1.0, -1.0),
            tan(k(4.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(-2.0), 0.0, 2.0),
            tan(k(-4.0), 1.0, -1.0),
            tan(k(4.0), 1.0, 1.0),
            tan(k(4.0), 0.0, 1.0),
        ],
    },
    Table3Row {
        name: "SO22xSO32-SO5xSO5-SO5",
        x1: &[
            cot(k(-1.0), 1.0, 0.0),
            cot(k(-1.0), 1.0, -1.0),
            cot(k(-1.0), 1.0, 1.0),
            tan(k(1.0), 1.0, 0.0),
            tan(k(1.0), 1.0, -1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(1.0), 1.0, -1.0),
            cot(k(-1.0), 0.0, 1.0),
            cot(k(-1.0), 1.0, 1.0),
            tan(k(-1.0), 1.0, -1.0),
            tan(k(1.0), 0.0, 1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        // Printed with an overall factor 2, distributed here.
        name: "rho6-SO5xSO5-SO5",
        x1: &[
            cot(k(-2.0), 1.0, 0.0),
            tan(k(2.0), 1.0, -1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
        x2: &[
            tan(k(-2.0), 1.0, -1.0),
            tan(k(2.0), 0.0, 1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "rho7-Sp2-U2",
        x1: &[
            cot(k(-1.0), 1.0, 0.0),
            tan(k(1.0), 1.0, -1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(-1.0), 0.0, 1.0),
            tan(k(-1.0), 1.0, -1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "SUq2-Spq2-Sp2Spq",
        x1: &[
            cot(qk(-2.0, 4.0), 1.0, 0.0),
            cot(k(-2.0), 1.0, -1.0),
            cot(k(-2.0), 1.0, 1.0),
            cot(k(-2.0), 2.0, 0.0),
            tan(qk(2.0, -4.0), 1.0, 0.0),
            tan(k(2.0), 1.0, -1.0),
            tan(k(2.0), 1.0, 1.0),
            tan(k(4.0), 2.0, 0.0),
        ],
        x2: &[
            cot(k(2.0), 1.0, -1.0),
            cot(qk(-2.0, 4.0), 0.0, 1.0),
            cot(k(-2.0), 1.0, 1.0),
            cot(k(-2.0), 0.0, 2.0),
            tan(k(-2.0), 1.0, -1.0),
            tan(qk(2.0, -4.0), 0.0, 1.0),
            tan(k(2.0), 1.0, 1.0),
            tan(k(4.0), 0.0, 2.0),
        ],
    },
    Table3Row {
        name: "SU4-Sp4-Sp2Sp2",
        x1: &[
            cot(k(-2.0), 1.0, 0.0),
            cot(k(-1.0), 1.0, -1.0),
            cot(k(-1.0), 1.0, 1.0),
            tan(k(2.0), 1.0, 0.0),
            tan(k(2.0), 1.0, -1.0),
            tan(k(3.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(1.0), 1.0, -1.0),
            cot(k(-2.0), 0.0, 1.0),
            cot(k(-1.0), 1.0, 1.0),
            tan(k(-2.0), 1.0, -1.0),
            tan(k(1.0), 0.0, 1.0),
            tan(k(3.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "U4-Sp4-Sp2Sp2",
        x1: &[
            cot(k(-2.0), 1.0, 0.0),
            cot(k(-2.0), 1.0, -1.0),
            cot(k(-2.0), 1.0, 1.0),
            tan(k(2.0), 1.0, 0.0),
            tan(k(1.0), 1.0, -1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(2.0), 1.0, -1.0),
            cot(k(-2.0), 0.0, 1.0),
            cot(k(-2.0), 1.0, 1.0),
            tan(k(-1.0), 1.0, -1.0),
            tan(k(1.0), 0.0, 1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        // The first component prints "-4(j-1)cot x1" where the multiplicity
        // table's entry is 2j-4; transcribed as printed.
        name: "Spj1xSpqj1-Spq2-Sp2Spq",
        x1: &[
            cot(jk(-4.0, 4.0), 1.0, 0.0),
            cot(k(-6.0), 2.0, 0.0),
            tan(qjk(4.0, -4.0, -4.0), 1.0, 0.0),
            tan(k(4.0), 1.0, -1.0),
            tan(k(4.0), 1.0, 1.0),
        ],
        x2: &[
            cot(qjk(-4.0, 4.0, 4.0), 0.0, 1.0),
            cot(k(-6.0), 0.0, 2.0),
            tan(k(-4.0), 1.0, -1.0),
            tan(jk(4.0, -4.0), 0.0, 1.0),
            tan(k(4.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "Sp2xSp2-Sp4-Sp2Sp2",
        x1: &[
            cot(k(-3.0), 1.0, 0.0),
            tan(k(1.0), 1.0, 0.0),
            tan(k(3.0), 1.0, -1.0),
            tan(k(4.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(-3.0), 0.0, 1.0),
            tan(k(-3.0), 1.0, -1.0),
            tan(k(4.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "SU22SO22-Sp2xSp2-Sp2",
        x1: &[
            cot(k(-1.0), 1.0, 0.0),
            cot(k(-1.0), 1.0, -1.0),
            cot(k(-1.0), 1.0, 1.0),
            tan(k(1.0), 1.0, 0.0),
            tan(k(1.0), 1.0, -1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(1.0), 1.0, -1.0),
            cot(k(-1.0), 0.0, 1.0),
            cot(k(-1.0), 1.0, 1.0),
            tan(k(-1.0), 1.0, -1.0),
            tan(k(1.0), 0.0, 1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        // Printed with an overall factor 2, distributed here.
        name: "rho8-Sp2xSp2-Sp2",
        x1: &[
            cot(k(-2.0), 1.0, 0.0),
            tan(k(2.0), 1.0, -1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(-2.0), 0.0, 1.0),
            tan(k(-2.0), 1.0, -1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        // Printed with an overall factor 2, distributed here.
        name: "rho9-Sp2xSp2-Sp2",
        x1: &[
            cot(k(-2.0), 1.0, 0.0),
            tan(k(2.0), 1.0, -1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(-2.0), 0.0, 1.0),
            tan(k(-2.0), 1.0, -1.0),
            tan(k(2.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "Sp4-E6-Spin10U1",
        x1: &[
            cot(k(-4.0), 1.0, 0.0),
            cot(k(-3.0), 1.0, -1.0),
            cot(k(-4.0), 1.0, 1.0),
            tan(k(4.0), 1.0, 0.0),
            tan(k(3.0), 1.0, -1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(3.0), 1.0, -1.0),
            cot(k(-3.0), 0.0, 1.0),
            cot(k(-4.0), 1.0, 1.0),
            tan(k(-3.0), 1.0, -1.0),
            tan(k(6.0), 0.0, 1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "SU6SU2-E6-Spin10U1",
        x1: &[
            cot(k(-4.0), 1.0, 0.0),
            cot(k(-2.0), 1.0, -1.0),
            cot(k(-2.0), 1.0, 1.0),
            cot(k(-2.0), 2.0, 0.0),
            tan(k(4.0), 1.0, 0.0),
            tan(k(4.0), 1.0, -1.0),
            tan(k(3.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(2.0), 1.0, -1.0),
            cot(k(-4.0), 0.0, 1.0),
            cot(k(-2.0), 1.0, 1.0),
            cot(k(-2.0), 0.0, 2.0),
            tan(k(-4.0), 1.0, -1.0),
            tan(k(5.0), 0.0, 1.0),
            tan(k(3.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "rho10-E6-Spin10U1",
        x1: &[
            cot(k(-4.0), 1.0, 0.0),
            cot(k(-4.0), 1.0, -1.0),
            cot(k(-4.0), 1.0, 1.0),
            cot(k(-2.0), 2.0, 0.0),
            tan(k(4.0), 1.0, 0.0),
            tan(k(2.0), 1.0, -1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(4.0), 1.0, -1.0),
            cot(k(-4.0), 0.0, 1.0),
            cot(k(-4.0), 1.0, 1.0),
            cot(k(-2.0), 0.0, 2.0),
            tan(k(-2.0), 1.0, -1.0),
            tan(k(5.0), 0.0, 1.0),
            tan(k(1.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "rho11-E6-Spin10U1",
        x1: &[
            cot(k(-8.0), 1.0, 0.0),
            cot(k(-2.0), 2.0, 0.0),
            tan(k(6.0), 1.0, -1.0),
            tan(k(5.0), 1.0, 1.0),
        ],
        x2: &[
            cot(k(-2.0), 0.0, 2.0),
            tan(k(-6.0), 1.0, -1.0),
            tan(k(9.0), 0.0, 1.0),
            tan(k(5.0), 1.0, 1.0),
        ],
    },
    Table3Row {
        name: "rho12-E6-Spin10U1",
        x1: &[
            cot(k(-6.0), 1.0, 0.0),
            cot(k(-1.0), 1.0, -1.0),
            cot(k(-1.0), 1.0, 1.0),
            tan(k(2.0), 1.0, 0.0),
            tan(k(5.0), 1.0, -1.0),
            tan(k(4.0), 1.0, 1.0),
            tan(k(2.0), 2.0, 0.0),
        ],
        x2: &[
            cot(k(1.0), 1.0, -1.0),
            cot(k(-6.0), 0.0, 1.0),
            cot(k(-1.0), 1.0, 1.0),
            tan(k(-5.0), 1.0, -1.0),
            tan(k(3.0), 0.0, 1.0),
            tan(k(4.0), 1.0, 1.0),
            tan(k(2.0), 0.0, 2.0),
        ],
    },
    Table3Row {
        name: "Sp4-E6-F4",
        x1: &[
            cot(k(-8.0), 2.0, 0.0),
            cot(k(-4.0), 1.0, -S3),
            cot(k(-4.0), 1.0, S3),
            tan(k(8.0), 2.0, 0.0),
            tan(k(4.0), 1.0, -S3),
            tan(k(4.0), 1.0, S3),
        ],
        x2: &[
            cot(k(4.0 * S3), 1.0, -S3),
            cot(k(-4.0 * S3), 1.0, S3),
            tan(k(-4.0 * S3), 1.0, -S3),
            tan(k(4.0 * S3), 1.0, S3),
        ],
    },
    Table3Row {
        name: "rho13-E6-F4",
        x1: &[
            cot(k(-16.0), 2.0, 0.0),
            tan(k(8.0), 1.0, -S3),
            tan(k(8.0), 1.0, S3),
        ],
        x2: &[tan(k(-8.0 * S3), 1.0, -S3), tan(k(8.0 * S3), 1.0, S3)],
    },
    Table3Row {
        name: "rho14-G2-SO4",
        x1: &[
            cot(k(-2.0), 2.0, 0.0),
            tan(k(3.0), 3.0, -S3),
            tan(k(1.0), 1.0, -S3),
            tan(k(1.0), 1.0, S3),
            tan(k(3.0), 3.0, S3),
        ],
        x2: &[
            cot(k(-2.0 * S3), 0.0, 2.0 * S3),
            tan(k(-S3), 3.0, -S3),
            tan(k(-S3), 1.0, -S3),
            tan(k(S3), 1.0, S3),
            tan(k(S3), 3.0, S3),
        ],
    },
    Table3Row {
        name: "rho15-G2-SO4",
        x1: &[
            cot(k(-2.0), 2.0, 0.0),
            tan(k(3.0), 3.0, -S3),
            tan(k(1.0), 1.0, -S3),
            tan(k(1.0), 1.0, S3),
            tan(k(3.0), 3.0, S3),
        ],
        x2: &[
            cot(k(-2.0 * S3), 0.0, 2.0 * S3),
            tan(k(-S3), 3.0, -S3),
            tan(k(-S3), 1.0, -S3),
            tan(k(S3), 1.0, S3),
            tan(k(S3), 3.0, S3),
        ],
    },
    Table3Row {
        // Printed with an overall factor 2, distributed here.
        name: "rho16-G2xG2-G2",
        x1: &[
            cot(k(-4.0), 2.0, 0.0),
            tan(k(6.0), 3.0, -S3),
            tan(k(2.0), 1.0, -S3),
            tan(k(2.0), 1.0, S3),
            tan(k(6.0), 3.0, S3),
        ],
        x2: &[
            cot(k(-4.0 * S3), 0.0, 2.0 * S3),
            tan(k(-2.0 * S3), 3.0, -S3),
            tan(k(-2.0 * S3), 1.0, -S3),
            tan(k(2.0 * S3), 1.0, S3),
            tan(k(2.0 * S3), 3.0, S3),
        ],
    },
    Table3Row {
        name: "SU24-G2xG2-G2",
        x1: &[
            cot(k(-2.0), 2.0, 0.0),
            cot(k(-3.0), 3.0, -S3),
            cot(k(-1.0), 1.0, -S3),
            cot(k(-1.0), 1.0, S3),
            cot(k(-3.0), 3.0, S3),
            tan(k(2.0), 2.0, 0.0),
            tan(k(3.0), 3.0, -S3),
            tan(k(1.0), 1.0, -S3),
            tan(k(1.0), 1.0, S3),
            tan(k(3.0), 3.0, S3),
        ],
        x2: &[
            cot(k(S3), 3.0, -S3),
            cot(k(S3), 1.0, -S3),
            cot(k(-S3), 1.0, S3),
            cot(k(-S3), 3.0, S3),
            cot(k(-2.0 * S3), 0.0, 2.0 * S3),
            tan(k(-S3), 3.0, -S3),
            tan(k(-S3), 1.0, -S3),
            tan(k(S3), 1.0, S3),
            tan(k(S3), 3.0, S3),
            tan(k(2.0 * S3), 0.0, 2.0 * S3),
        ],
    },
];
