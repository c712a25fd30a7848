#pragma once

#include "forge/census.hpp"
#include "forge/construct.hpp"
#include "forge/digraphs.hpp"
#include "forge/errors.hpp"
#include "forge/h_table.hpp"
#include "forge/sem.hpp"
#include "forge/sequences.hpp"
