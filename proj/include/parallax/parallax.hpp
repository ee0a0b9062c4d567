#pragma once

#include "parallax/rational.hpp"
#include "parallax/errors.hpp"
#include "parallax/poly.hpp"
#include "parallax/ratexpr.hpp"
#include "parallax/chart.hpp"
#include "parallax/parser.hpp"
#include "parallax/algnum.hpp"
#include "parallax/linalg.hpp"
#include "parallax/liealg.hpp"
#include "parallax/geometry.hpp"
#include "parallax/parallelism.hpp"
#include "parallax/connection.hpp"
#include "parallax/ode.hpp"
#include "parallax/jets.hpp"
#include "parallax/upoly.hpp"
#include "parallax/kovacic.hpp"
#include "parallax/galois.hpp"
#include "parallax/corpus.hpp"
