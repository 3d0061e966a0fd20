#pragma once

#include "qpswf/error.hpp"
#include "qpswf/io.hpp"
#include "qpswf/jacobi.hpp"
#include "qpswf/matrix.hpp"
#include "qpswf/pswf.hpp"
#include "qpswf/qbessel.hpp"
#include "qpswf/qcalc.hpp"
#include "qpswf/qfourier.hpp"
#include "qpswf/report.hpp"
#include "qpswf/sampling.hpp"
#include "qpswf/svg.hpp"
