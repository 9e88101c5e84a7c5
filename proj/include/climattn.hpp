#pragma once

#include "climattn/corpus.hpp"
#include "climattn/error.hpp"
#include "climattn/index.hpp"
#include "climattn/io.hpp"
#include "climattn/normgame.hpp"
#include "climattn/period.hpp"
#include "climattn/pipeline.hpp"
#include "climattn/var.hpp"
