#ifndef GOAL_ARBITER_GOAL_ARBITER_HPP
#define GOAL_ARBITER_GOAL_ARBITER_HPP

#include "goal_arbiter/arguments.hpp"
#include "goal_arbiter/attacks.hpp"
#include "goal_arbiter/errors.hpp"
#include "goal_arbiter/frameworks.hpp"
#include "goal_arbiter/kb.hpp"
#include "goal_arbiter/literal.hpp"
#include "goal_arbiter/parser.hpp"
#include "goal_arbiter/postulates.hpp"
#include "goal_arbiter/rational.hpp"
#include "goal_arbiter/semantics.hpp"

#endif  // GOAL_ARBITER_GOAL_ARBITER_HPP
