#ifndef SMC_SMC_HPP
#define SMC_SMC_HPP

// Library headers. The CLI layer (cli.hpp) is separate since it pulls in CLI11.
#include "smc/contract.hpp"
#include "smc/flow.hpp"
#include "smc/format.hpp"
#include "smc/generators.hpp"
#include "smc/graph.hpp"
#include "smc/instance.hpp"
#include "smc/oracle.hpp"
#include "smc/separation.hpp"
#include "smc/separators.hpp"
#include "smc/sepdp.hpp"
#include "smc/treedec.hpp"
#include "smc/trees.hpp"
#include "smc/twdp.hpp"

#endif
