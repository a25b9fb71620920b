//! Printed relations, transcribed literally as scalar text. Unknowns are
//! `a[ν]`, `c[μ;ν]` and the shorthand `c[ν]` for `c[1;ν]`; ν̄ is the
//! weight of the index ν.

/// Coefficient relation of y_{ν+μ+μ′} after applying the cubic identity to x_ν.
pub const FOUR_TERM: &str = "(d-μ-μ′)*((ν̄+d+μ′*b′)*(ν̄+μ′+d+μ*b′)*a[ν] \
    - (ν̄+μ′*b)*(ν̄+μ′+d+μ*b′)*a[ν+μ′] \
    - (ν̄+μ*b)*(ν̄+μ+d+μ′*b′)*a[ν+μ] \
    + (ν̄+μ*b)*(ν̄+μ+μ′*b)*a[ν+μ+μ′]) \
    - (d-μ′)*(d+μ′-μ)*((ν̄+d+(μ+μ′)*b′)*a[ν] - (ν̄+(μ+μ′)*b)*a[ν+μ+μ′])";

/// μ′ = μ, ν ↦ ν−μ.
pub const THREE_TERM_EQUAL: &str = "((d-2*μ)*(ν̄-μ+d+μ*b′)*(ν̄+d+μ*b′) - d*(d-μ)*(ν̄-μ+d+2*μ*b′))*a[ν-μ] \
    - 2*(d-2*μ)*(ν̄-μ+μ*b)*(ν̄+d+μ*b′)*a[ν] \
    + ((d-2*μ)*(ν̄-μ+μ*b)*(ν̄+μ*b) + d*(d-μ)*(ν̄-μ+2*μ*b))*a[ν+μ]";

/// μ′ = −μ.
pub const THREE_TERM_OPPOSITE: &str = "(ν̄-μ*b)*(ν̄-μ+d+μ*b′)*a[ν-μ] \
    - ((ν̄+d-μ*b′)*(ν̄-μ+d+μ*b′) + (ν̄+μ*b)*(ν̄+μ-μ*b) - (d+μ)*(d-2*μ))*a[ν] \
    + (ν̄+μ*b)*(ν̄+μ+d-μ*b′)*a[ν+μ]";

/// μ = μ′ = −μ, ν ↦ ν+μ; the sign before the third term is missing in
/// print, so both readings are kept.
pub const THREE_TERM_NEGATED_PLUS: &str = "((d+2*μ)*(ν̄+μ-μ*b)*(ν̄-μ*b) + d*(d+μ)*(ν̄+μ-2*μ*b))*a[ν-μ] \
    - 2*(d+2*μ)*(ν̄+μ-μ*b)*(ν̄+d-μ*b′)*a[ν] \
    + ((d+2*μ)*(ν̄+μ+d-μ*b′)*(ν̄+d-μ*b′) - d*(d+μ)*(ν̄+μ+d-2*μ*b′))*a[ν+μ]";

pub const THREE_TERM_NEGATED_MINUS: &str = "((d+2*μ)*(ν̄+μ-μ*b)*(ν̄-μ*b) + d*(d+μ)*(ν̄+μ-2*μ*b))*a[ν-μ] \
    - 2*(d+2*μ)*(ν̄+μ-μ*b)*(ν̄+d-μ*b′)*a[ν] \
    - ((d+2*μ)*(ν̄+μ+d-μ*b′)*(ν̄+d-μ*b′) - d*(d+μ)*(ν̄+μ+d-2*μ*b′))*a[ν+μ]";

/// Determinant of the three-term system in a[ν−μ], a[ν], a[ν+μ].
pub const DETERMINANT: &str = "(b′-b)*(1+b′-b)*μ^6*(4*d*(3*(b+b′)^2-7*b-5*b′+2)*ν̄ \
    + 4*(b+b′)*((b+b′)^2*(b-b′)-2*(b+b′)*(b-2*b′)-(b+5*b′)+2)*μ^2 \
    + d^2*(-(b+b′)^3*(b-b′)-2*(b+b′)*(b^2+3*b*b′+4*b′^2)+19*b^2+34*b*b′+19*b′^2-24*b-16*b′+4))";

/// The (b, b′) pairs on which the determinant vanishes.
pub const DETERMINANT_ROOTS: [(i64, i64); 3] = [(1, -1), (0, 1), (2, 0)];

/// c[−1;ν] solved from the commutator of L_{−1} and L_{1+d}; written as
/// `lhs − rhs`.
pub const AUX_MINUS_ONE: &str = "c[-1;ν] - 1/(d-1)*((ν̄-1-b)*c[ν-2] - (ν̄+d-b″)*c[ν-1])";

/// Second relation: the s-recurrence.
pub const S_RECURRENCE: &str = "(ν̄+b)*(ν̄+1+d-b″)*c[ν] \
    - (2*ν̄^2+(2*d-1)*ν̄-d+b″-b″^2-b^2+1)*c[ν-1] \
    + (ν̄+d-1+b″)*(ν̄-1-b)*c[ν-2]";

/// z_{ν+1} coefficient of L_{1+d}x_ν as printed in the commutator display.
pub const LEAK_ONE_PLUS_D: &str = "c[ν]/(d-1)";

/// z_ν coefficient of the second commutator display (L_d as [L_{−1},L_{1+d}]).
pub const DISPLAY_SECOND: &str = "1/(d+2)*(c[-1;ν+1] - 1/(d-1)*((ν̄-b)*c[ν-1] - (ν̄+1+d-b″)*c[ν]))";

/// z_ν coefficient of the third commutator display ([L_{−1},L_1] on y_ν).
pub const DISPLAY_THIRD: &str = "(ν̄+d+b-1)*c[-1;ν+1] + (ν̄+1+d-b″)*c[ν] \
    - (ν̄+d-b+1)*c[ν-1] - (ν̄-1+d+b″)*c[-1;ν]";

/// z_{ν−1} coefficient of L_{−1+d}x_ν.
pub const DISPLAY_MINUS_ONE_PLUS_D: &str = "1/((d+1)*(d-1))*((ν̄-1-b)*c[ν-2] - (ν̄+d-b″)*c[ν-1])";

/// z_{ν+2} coefficient of L_{2+d}x_ν through [L_2, L_d].
pub const DISPLAY_TWO_PLUS_D: &str = "1/(d-2)*c[2;ν]";

/// z_{ν+2} coefficient of L_{2+d}x_ν through [L_1, L_{1+d}], as printed;
/// `k` stands where ν̄ is expected.
pub const DISPLAY_TWO_PLUS_D_ALT: &str = "1/(d*(d-1))*((k+1+d+b″)*c[ν] - (ν̄+1+b-d)*c[ν+1])";

/// z_{ν+1} coefficient of L_{1+d}x_ν through [L_2, L_{−1+d}].
pub const DISPLAY_ONE_PLUS_D_ALT: &str = "1/(d-3)*(c[2;ν-1] + 1/((d+1)*(d-1))*(((ν̄-1-b)*c[ν-2] \
    - (ν̄+d-b″)*c[ν-1])*(ν̄-1+d+2*b″) - (ν̄+2*b)*((ν̄+1-b)*c[ν] - (ν̄+2+d-b″)*c[ν+1])))";

/// c[2;ν] solved from the two expressions of L_{2+d}x_ν.
pub const AUX_TWO: &str = "c[2;ν] - (d-2)/(d*(d-1))*((ν̄+1+d+b″)*c[ν] - (ν̄+b-d+1)*c[ν+1])";

/// Second relation: the t-recurrence.
pub const T_RECURRENCE: &str = "d*(ν̄-1+2*b)*(ν̄+1+d-b″)*c[ν] \
    - (d*ν̄^2+(d^2+(b-2)*d-2)*ν̄+(b-2)*d^2-2*b^2*d+2-2*b)*c[ν-1] \
    - (d*ν̄^2+(d^2+(b″-2)*d+2)*ν̄-d^2-(2*b″^2-b″-3)*d+2*b″-2)*c[ν-2] \
    + d*(ν̄-2-b)*(ν̄-2+d+2*b″)*c[ν-3]";

/// Elimination multipliers as printed and the ones that cancel c[ν−3].
pub const MULTIPLIER_PRINTED: &str = "ν̄-2-d+b″";
pub const MULTIPLIER_CORRECTED: &str = "ν̄-2+d+b″";

/// Factors split off p, and the leading coefficient of the quadratic rest.
pub const P_PREFACTOR: &str = "-d*(d+1)*(b″-b)*(b″-b-1)*(ν̄+b)*(ν̄+d-1+b″)";
pub const P_LEADING: &str = "(b+b″)*(b+b″-1)";
/// p₁ minus this is a multiple of p₀.
pub const P_MIDDLE_REMAINDER: &str = "-2*(3*b″^2-3*b″-1)*b*d - 2*(3*b″^3-4*b″^2-b″+1)*d";

/// The (b, b″) pairs beyond the two lines b″ = b and b″ = b+1.
pub const EXCEPTIONAL_PAIRS: [(i64, i64); 3] = [(1, -1), (-1, 1), (1, 0)];

/// Equal-slope variant, auxiliary relations.
pub const EQUAL_SLOPE_AUX_MINUS_ONE: &str = "(ν̄-1+(d+1)*b)*c[-1;ν] \
    - 1/(d-1)*((ν̄-1-b)*(ν̄-2+b*d)*c[ν-2] - (ν̄-1+b*d)*(ν̄+d-b″)*c[ν-1])";

pub const EQUAL_SLOPE_AUX_TWO: &str = "(ν̄+b*d)*c[2;ν] \
    - (d-2)/(d*(d-1))*((ν̄+b*d)*(ν̄+1+d+b″)*c[ν] - ((ν̄+b)*(ν̄+1+b*d) - (d-1)*(ν̄+(d+1)*b))*c[ν+1])";
