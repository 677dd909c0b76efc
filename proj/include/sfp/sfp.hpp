#ifndef SFP_SFP_HPP
#define SFP_SFP_HPP

#include "sfp/cli.hpp"
#include "sfp/constructions.hpp"
#include "sfp/flatness.hpp"
#include "sfp/json_io.hpp"
#include "sfp/lifting.hpp"
#include "sfp/manifest.hpp"
#include "sfp/resolution.hpp"
#include "sfp/runner.hpp"
#include "sfp/search.hpp"

#endif  // SFP_SFP_HPP
