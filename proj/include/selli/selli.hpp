#pragma once

#include <selli/arith.hpp>
#include <selli/bivariate.hpp>
#include <selli/certificate.hpp>
#include <selli/diophantine.hpp>
#include <selli/family.hpp>
#include <selli/ffield.hpp>
#include <selli/jacobian.hpp>
#include <selli/poly.hpp>
