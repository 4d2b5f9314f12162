#pragma once

#include "gseq/fibzeck.hpp"
#include "gseq/recurrence.hpp"
#include "gseq/tree.hpp"
#include "gseq/verify.hpp"
#include "gseq/words.hpp"
