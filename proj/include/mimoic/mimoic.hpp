#pragma once

#include "mimoic/bounds.hpp"
#include "mimoic/channel.hpp"
#include "mimoic/errors.hpp"
#include "mimoic/geometry.hpp"
#include "mimoic/matrix.hpp"
#include "mimoic/ratesplit.hpp"
#include "mimoic/schemes.hpp"
#include "mimoic/verify.hpp"
