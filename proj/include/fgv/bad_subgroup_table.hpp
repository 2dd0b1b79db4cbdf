// Bad-subgroup table for basic moves on a surface basis, kept as a plain
// text fixture so the transcription can be audited row by row.
//
// Row format:   <tag> : <gen> ; <gen> ; ... ; rot(<letter>)
// Generators are words in role letters (trailing apostrophe = inverse):
//   x, xh   the moving letter and its hat partner
//   y, yh   the second letter of the move and its partner
//   n       the one-sided letter
//   a, ah   the two-sided pair linked with n
//   g1, g2  auxiliary generators used when y is one-sided or linked
//   nexthat the hat-type letter whose pair index is one above x's
// rot(t) denotes the cyclic permutation of the boundary word starting at t.
//
// Tag key: xU = x two-sided not linked, xL = x linked with the one-sided,
// xN = x one-sided; yU/yL likewise for y; r/l = right/left multiplication;
// unhatted/hatted = whether x is a hatted letter; inv = invert move.
#ifndef FGV_BAD_SUBGROUP_TABLE_HPP
#define FGV_BAD_SUBGROUP_TABLE_HPP

namespace fgv {

inline constexpr const char* kBadSubgroupTable = R"(
xU.yU.r.unhatted : y ; yh ; x' xh x ; rot(nexthat)
xU.yU.l.unhatted : y ; yh ; xh ; rot(x)
xU.yU.r.hatted   : y ; yh ; xh ; rot(xh')
xU.yU.l.hatted   : y ; yh ; x xh x' ; rot(x)

xU.yL.r.unhatted : g1 ; g2 ; x' xh x ; rot(x')
xU.yL.l.unhatted : g1 ; g2 ; xh ; rot(xh')
xU.yL.r.hatted   : g1 ; g2 ; xh ; rot(xh')
xU.yL.l.hatted   : g1 ; g2 ; x xh x' ; rot(x)

g1g2.y=a  : g1 = a ; g2 = n ah a ah'
g1g2.y=ah : g1 = ah ; g2 = n a
g1g2.y=n  : g1 = n ; g2 = a' n' ah a ah' n a

xL.r.unhatted : y ; yh ; x' n' xh ; x' xh x ; rot(yh)
xL.l.unhatted : xh ; y ; yh ; x xh' n ; rot(x)
xL.r.hatted   : y ; yh ; xh ; x' n x ; rot(xh)
xL.l.hatted   : y ; yh ; n ; x xh x' ; rot(n)

xN.r : y ; yh ; ah ; a ah' n ; rot(ah)
xN.l : y ; yh ; a ah' ; n ah ; rot(n)

inv.unhatted : x ; xh ; rot(nexthat)
inv.hatted   : x ; xh ; rot(nexthat)
)";

}  // namespace fgv

#endif
