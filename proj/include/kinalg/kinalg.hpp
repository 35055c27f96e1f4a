#pragma once

#include "kinalg/num.hpp"
#include "kinalg/poly.hpp"
#include "kinalg/groebner.hpp"
#include "kinalg/euler.hpp"
#include "kinalg/revolute.hpp"
#include "kinalg/component.hpp"
#include "kinalg/mechanism.hpp"
#include "kinalg/bricard.hpp"
#include "kinalg/bennett.hpp"
#include "kinalg/spec_io.hpp"
#include "kinalg/report_io.hpp"
#include "kinalg/verify.hpp"
