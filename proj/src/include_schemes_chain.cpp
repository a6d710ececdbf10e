#include <pfxauth/schemes/chain.hpp>
#include <pfxauth/schemes/chain.hpp>
