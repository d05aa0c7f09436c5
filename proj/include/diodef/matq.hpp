#ifndef DIODEF_MATQ_HPP
#define DIODEF_MATQ_HPP

#include <optional>
#include <vector>

#include "diodef/intutil.hpp"

namespace diodef {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>; // row major
using ZVec = std::vector<Int>;
using ZMat = std::vector<ZVec>;

int q_rank(QMat m);
// solve A x = b (A: r x c); any solution, or nullopt if inconsistent
std::optional<QVec> q_solve(QMat a, QVec b);
// solve A x = b over the integers (A: r x c); any integral solution
std::optional<ZVec> z_solve(const ZMat &a, const ZVec &b);
// reduce v modulo the lattice spanned by the columns of A (A square,
// full rank); returns canonical representative with coordinates in
// [0, diag) of the column HNF
ZVec z_lattice_reduce(const ZMat &a, const ZVec &v);

} // namespace diodef

#endif
