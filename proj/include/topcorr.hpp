#pragma once

#include "topcorr/rational.hpp"
#include "topcorr/errors.hpp"
#include "topcorr/report.hpp"
#include "topcorr/weight_family.hpp"
#include "topcorr/groupoid.hpp"
#include "topcorr/actions.hpp"
#include "topcorr/measures.hpp"
#include "topcorr/measure_calculus.hpp"
#include "topcorr/cohomology.hpp"
#include "topcorr/correspondence.hpp"
#include "topcorr/bicategory.hpp"
#include "topcorr/generators.hpp"
#include "topcorr/cstar/algebra.hpp"
#include "topcorr/cstar/module.hpp"
#include "topcorr/cstar/tensor.hpp"
#include "topcorr/cstar/functor.hpp"
#include "topcorr/io/instance.hpp"
#include "topcorr/suite.hpp"
#include "topcorr/catalog.hpp"
