#pragma once

#include "catalogue.hpp"
#include "config.hpp"
#include "continuation.hpp"
#include "errors.hpp"
#include "export.hpp"
#include "germ.hpp"
#include "jet.hpp"
#include "models.hpp"
#include "recognition.hpp"
#include "search.hpp"
#include "svg.hpp"
#include "window.hpp"
