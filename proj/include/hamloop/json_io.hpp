#ifndef HAMLOOP_JSON_IO_HPP
#define HAMLOOP_JSON_IO_HPP

#include "hamloop/period_lattice.hpp"
#include "hamloop/qpoly.hpp"
#include "hamloop/unitary_path.hpp"

#include <json.hpp>

// JSON encodings. Exact values are "p/q" strings; floating values are numbers.

namespace hamloop {

using nlohmann::json;

Rational rational_from_json(const json& j);

json to_json(const TrigPoly& f);
TrigPoly trig_poly_from_json(const json& j);

json to_json(const PathSpec& p);
PathSpec path_spec_from_json(const json& j);

json to_json(const BumpProfile& b);
BumpProfile bump_from_json(const json& j);

json to_json(const LoopSpec& l);

json to_json(const QPoly& p);
QPoly qpoly_from_json(const json& j, std::size_t nvars);

json to_json(const QRatFunc& f);
QRatFunc qratfunc_from_json(const json& j);

json to_json(const PeriodLattice& l);
PeriodLattice lattice_from_json(const json& j);

}  // namespace hamloop

#endif  // HAMLOOP_JSON_IO_HPP
