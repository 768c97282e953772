#ifndef AIJ_AIJ_HPP
#define AIJ_AIJ_HPP

#include "aij/error.hpp"
#include "aij/primitive_table.hpp"
#include "aij/values.hpp"
#include "aij/terms.hpp"
#include "aij/environment.hpp"
#include "aij/primitives.hpp"
#include "aij/evaluator.hpp"
#include "aij/sexpr.hpp"
#include "aij/dump.hpp"
#include "aij/closure.hpp"
#include "aij/flatten.hpp"
#include "aij/codegen.hpp"
#include "aij/bench.hpp"
#include "aij/oracle.hpp"
#include "aij/stack.hpp"

#endif  // AIJ_AIJ_HPP
