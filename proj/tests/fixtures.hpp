// Raw systems and published constants for the three reference examples.
#pragma once

#include <string>

#include "pwlcycles/canonical_form.hpp"

namespace fixtures {

using pwlcycles::CanonicalForm;
using pwlcycles::PWLSystem;
using pwlcycles::Rational;
using pwlcycles::UniPoly;

inline Rational q(const char* s) { return Rational::parse(s); }

inline PWLSystem huan_yang() {
  PWLSystem s;
  s.A_L = {{{q("1"), q("-5")}, {q("377/1000"), q("-13/10")}}};
  s.b_L = {q("1"), q("377/1000")};
  s.A_R = {{{q("19/500"), q("-1/10")}, {q("1/10"), q("19/500")}}};
  s.b_R = {q("19/500"), q("1/10")};
  return s;
}

inline PWLSystem freire() {
  PWLSystem s;
  s.A_L = {{{q("-1/4"), q("-1")}, {q("65/64"), q("0")}}};
  s.b_L = {q("260534/1045519"), q("-65/64")};
  s.A_R = {{{q("3276710/13106841"), q("-1")}, {q("174473488105306/171789280999281"), q("0")}}};
  s.b_R = {q("-260534/1045519"), q("-96440395023695996806/95571015330487000887")};
  return s;
}

inline PWLSystem gasull() {
  PWLSystem s;
  s.A_L = {{{q("-1/5"), q("1")}, {q("-1"), q("-1/5")}}};
  s.b_L = {q("1/250"), q("-51/50")};
  s.A_R = {{{q("3/8"), q("1")}, {q("-1"), q("3/8")}}};
  s.b_R = {q("1159/1000"), q("-14333/2000")};
  return s;
}

inline CanonicalForm huan_yang_cf() {
  return {q("-3/10"), q("117/200"), q("-117/200"), q("19/250"), q("2861/250000"), q("-2861/5000"), q("9/10")};
}

inline CanonicalForm freire_cf() {
  return {q("-1/4"),
          q("65/64"),
          q("65/64"),
          q("3276710/13106841"),
          q("174473488105306/171789280999281"),
          q("96440395023695996806/95571015330487000887"),
          q("-521068/1045519")};
}

inline CanonicalForm gasull_cf() {
  return {q("-2/5"), q("26/25"), q("-637/625"), q("3/4"), q("73/64"), q("-60809/8000"), q("231/200")};
}

/// Both sides T = 0, D = 1, a = 0, b* = 0.
inline CanonicalForm center_cf() { return {q("0"), q("1"), q("0"), q("0"), q("1"), q("0"), q("0")}; }

/// Left side with T = D = 0 (no focus); right focus.
inline CanonicalForm nonfocus_cf() { return {q("0"), q("0"), q("1"), q("1/5"), q("1"), q("-1"), q("1/2")}; }

/// Focus-focus parameters with Δ_{b*} < 0.
inline CanonicalForm condition_p_cf() {
  return {q("-3/5"), q("19/10"), q("-8/5"), q("-4/5"), q("9/10"), q("8/5"), q("2/5")};
}

inline UniPoly from_strings(std::initializer_list<const char*> low_to_high) {
  std::vector<Rational> c;
  for (const char* s : low_to_high) c.push_back(q(s));
  return UniPoly(std::move(c));
}

/// The displayed quintic cofactors, lowest degree first.
inline UniPoly huan_yang_quintic() {
  return from_strings({"2258133778849572", "-7126051666209372", "3572696139179193", "-6284181440066400",
                       "6760062816990000", "1601361472000000"});
}

inline UniPoly gasull_quintic() {
  return from_strings({"2038344678891458976535215823461357", "-3787786101124879021445139913050000",
                       "1124855330748568052975913837890625", "-1198304836247530573146057128906250",
                       "742832966116277404785156250000000", "103119356365203857421875000000000"});
}

}  // namespace fixtures
