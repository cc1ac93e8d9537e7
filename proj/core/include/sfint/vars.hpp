#pragma once

#include <string>
#include <vector>

namespace sfint {

using VarId = int;

// Global variable registry. The canonical variable order puts x before y
// before z, then every other name (ansatz unknowns, auxiliary symbols) in
// name order with numeric suffixes compared numerically, so a2 comes before
// a10. The order is a property of the names alone and therefore stable
// across runs regardless of registration order.
VarId var_id(const std::string& name);
const std::string& var_name(VarId v);
bool var_registered(const std::string& name);

// Three-way canonical comparison: negative if a precedes b (a is the more
// significant variable), zero iff equal.
int var_order(VarId a, VarId b);

VarId var_x();
VarId var_y();
VarId var_z();

} // namespace sfint
