#pragma once

// JSON views of the library types. Integers and rationals are decimal
// strings ("num/den" for non-integral rationals) so nothing is truncated.

#include "edsfrey/descent.hpp"
#include "edsfrey/eds.hpp"
#include "edsfrey/frey.hpp"
#include "edsfrey/ledger.hpp"
#include "edsfrey/quadfield.hpp"

#include <json.hpp>

namespace edsfrey {

using Json = nlohmann::ordered_json;

Json to_json(const Integer& n);
Json to_json(const Rational& q);
Json to_json(const RationalPoint& p);
Json to_json(const EDSTerm& t);
Json to_json(const PowerHit& h);
Json to_json(const QuadElement& z);
Json to_json(const QuadPrime& P);
Json to_json(const FreySolution& s);
Json to_json(const DescentDatum& d);
Json to_json(const Envelope& e);
Json to_json(const LevelSupport& l);
Json to_json(const LedgerReport& r);

/// Parses an integer or "num/den" rational. Throws InvalidInput.
Rational parse_rational(const std::string& text);
Integer parse_integer(const std::string& text);

}  // namespace edsfrey
