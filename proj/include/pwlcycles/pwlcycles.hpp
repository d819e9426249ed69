// Everything in one include.
#pragma once

#include "pwlcycles/rational.hpp"
#include "pwlcycles/polynomial.hpp"
#include "pwlcycles/bipoly.hpp"
#include "pwlcycles/real_roots.hpp"
#include "pwlcycles/resultant.hpp"
#include "pwlcycles/canonical_form.hpp"
#include "pwlcycles/contact.hpp"
#include "pwlcycles/bound_engine.hpp"
#include "pwlcycles/halfmap.hpp"
#include "pwlcycles/displacement.hpp"
#include "pwlcycles/descriptor.hpp"
#include "pwlcycles/report.hpp"
