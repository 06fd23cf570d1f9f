#pragma once

#include "erbound/certificate.hpp"
#include "erbound/cone.hpp"
#include "erbound/cutset.hpp"
#include "erbound/family.hpp"
#include "erbound/instance.hpp"
#include "erbound/prover.hpp"
#include "erbound/rational.hpp"
#include "erbound/ratlp.hpp"
#include "erbound/region.hpp"
#include "erbound/universe.hpp"
#include "erbound/version.hpp"
