#pragma once

#include "ramify/character.hpp"
#include "ramify/conductor.hpp"
#include "ramify/constant.hpp"
#include "ramify/counting.hpp"
#include "ramify/cyclotomic.hpp"
#include "ramify/errors.hpp"
#include "ramify/group.hpp"
#include "ramify/profile.hpp"
#include "ramify/ramification.hpp"
#include "ramify/rational.hpp"
#include "ramify/sampling.hpp"
#include "ramify/serialize.hpp"
#include "ramify/verify.hpp"
