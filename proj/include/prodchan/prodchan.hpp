#pragma once

#include "prodchan/channels.hpp"
#include "prodchan/classifier.hpp"
#include "prodchan/corpus.hpp"
#include "prodchan/error.hpp"
#include "prodchan/json_io.hpp"
#include "prodchan/linalg.hpp"
#include "prodchan/states.hpp"
