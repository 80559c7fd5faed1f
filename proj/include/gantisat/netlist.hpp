/*!
  \file netlist.hpp
  \brief Gate-level combinational netlists with 64-way packed simulation.

  Wires are identified by name; every wire is driven by exactly one gate
  or one input.  Inputs whose names start with "keyinput" are key inputs,
  ordered by their numeric suffix.  Netlists are immutable once
  finalized and all queries are const.
*/

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bitvec.hpp"

namespace gantisat
{

enum class GateKind
{
  AND,
  NAND,
  OR,
  NOR,
  XOR,
  XNOR,
  NOT,
  BUF
};

inline char const* gate_kind_name( GateKind k )
{
  switch ( k )
  {
  case GateKind::AND: return "AND";
  case GateKind::NAND: return "NAND";
  case GateKind::OR: return "OR";
  case GateKind::NOR: return "NOR";
  case GateKind::XOR: return "XOR";
  case GateKind::XNOR: return "XNOR";
  case GateKind::NOT: return "NOT";
  case GateKind::BUF: return "BUF";
  }
  return "?";
}

struct Gate
{
  GateKind kind;
  std::vector<uint32_t> inputs;
  uint32_t output;
};

class netlist_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class Netlist
{
public:
  static constexpr std::string_view key_prefix = "keyinput";

  uint32_t add_wire( std::string const& name )
  {
    auto it = wire_index_.find( name );
    if ( it != wire_index_.end() )
      return it->second;
    uint32_t const idx = uint32_t( wire_names_.size() );
    wire_names_.push_back( name );
    wire_index_.emplace( name, idx );
    return idx;
  }

  bool has_wire( std::string const& name ) const { return wire_index_.count( name ) != 0; }

  uint32_t wire( std::string const& name ) const
  {
    auto it = wire_index_.find( name );
    if ( it == wire_index_.end() )
      throw netlist_error( "unknown wire: " + name );
    return it->second;
  }

  std::string const& wire_name( uint32_t idx ) const { return wire_names_[idx]; }
  size_t num_wires() const { return wire_names_.size(); }

  void add_input( std::string const& name )
  {
    inputs_.push_back( add_wire( name ) );
  }

  void add_output( std::string const& name )
  {
    outputs_.push_back( add_wire( name ) );
  }

  void add_gate( GateKind kind, std::vector<std::string> const& ins, std::string const& out )
  {
    Gate g;
    g.kind = kind;
    for ( auto const& i : ins )
      g.inputs.push_back( add_wire( i ) );
    g.output = add_wire( out );
    if ( ( kind == GateKind::NOT || kind == GateKind::BUF ) && g.inputs.size() != 1 )
      throw netlist_error( "NOT/BUF expects one input: " + out );
    if ( kind != GateKind::NOT && kind != GateKind::BUF && g.inputs.empty() )
      throw netlist_error( "gate with no inputs: " + out );
    gates_.push_back( std::move( g ) );
  }

  /*! Checks single drivers and acyclicity, computes the evaluation order,
      and classifies key inputs.  Must be called before simulation. */
  void finalize()
  {
    driver_.assign( wire_names_.size(), kNoDriver );
    for ( size_t gi = 0; gi < gates_.size(); ++gi )
    {
      uint32_t const out = gates_[gi].output;
      if ( driver_[out] != kNoDriver )
        throw netlist_error( "wire driven twice: " + wire_names_[out] );
      driver_[out] = uint32_t( gi );
    }
    std::vector<bool> is_input( wire_names_.size(), false );
    for ( auto w : inputs_ )
    {
      if ( driver_[w] != kNoDriver )
        throw netlist_error( "input wire also driven by a gate: " + wire_names_[w] );
      is_input[w] = true;
    }
    for ( uint32_t w = 0; w < wire_names_.size(); ++w )
      if ( driver_[w] == kNoDriver && !is_input[w] )
        throw netlist_error( "undriven wire: " + wire_names_[w] );

    // Iterative DFS for a topological gate order.
    topo_.clear();
    topo_.reserve( gates_.size() );
    std::vector<uint8_t> state( gates_.size(), 0 ); // 0 new, 1 open, 2 done
    std::vector<std::pair<uint32_t, size_t>> stack;
    for ( uint32_t root = 0; root < gates_.size(); ++root )
    {
      if ( state[root] )
        continue;
      stack.emplace_back( root, 0 );
      state[root] = 1;
      while ( !stack.empty() )
      {
        auto& [gi, next] = stack.back();
        if ( next < gates_[gi].inputs.size() )
        {
          uint32_t const in = gates_[gi].inputs[next++];
          if ( driver_[in] == kNoDriver )
            continue;
          uint32_t const dep = driver_[in];
          if ( state[dep] == 1 )
            throw netlist_error( "combinational cycle through wire: " + wire_names_[gates_[dep].output] );
          if ( state[dep] == 0 )
          {
            state[dep] = 1;
            stack.emplace_back( dep, 0 );
          }
        }
        else
        {
          state[gi] = 2;
          topo_.push_back( gi );
          stack.pop_back();
        }
      }
    }

    // Key inputs, ordered by numeric suffix.
    primary_inputs_.clear();
    key_inputs_.clear();
    std::vector<std::pair<long, uint32_t>> keyed;
    for ( auto w : inputs_ )
    {
      auto const& name = wire_names_[w];
      if ( name.rfind( key_prefix, 0 ) == 0 )
      {
        long suffix = -1;
        try
        {
          suffix = std::stol( name.substr( key_prefix.size() ) );
        }
        catch ( ... )
        {
        }
        keyed.emplace_back( suffix, w );
      }
      else
      {
        primary_inputs_.push_back( w );
      }
    }
    std::sort( keyed.begin(), keyed.end() );
    for ( auto const& [s, w] : keyed )
      key_inputs_.push_back( w );
    finalized_ = true;
  }

  bool finalized() const { return finalized_; }
  std::vector<Gate> const& gates() const { return gates_; }
  std::vector<uint32_t> const& inputs() const { return inputs_; }
  std::vector<uint32_t> const& outputs() const { return outputs_; }
  std::vector<uint32_t> const& primary_inputs() const { return primary_inputs_; }
  std::vector<uint32_t> const& key_inputs() const { return key_inputs_; }
  std::vector<uint32_t> const& topo_order() const { return topo_; }

  /*! Gate index driving a wire, or kNoDriver for inputs. */
  static constexpr uint32_t kNoDriver = 0xffffffffu;
  uint32_t driver( uint32_t w ) const { return driver_[w]; }

  /*! \brief Evaluates 64 input patterns at once.

    \p pi_lanes and \p key_lanes hold one 64-pattern word per primary/key
    input, aligned with primary_inputs() and key_inputs().  Returns one
    word per wire.
  */
  std::vector<uint64_t> simulate_packed( std::span<uint64_t const> pi_lanes,
                                         std::span<uint64_t const> key_lanes ) const
  {
    if ( !finalized_ )
      throw netlist_error( "simulate on non-finalized netlist" );
    if ( pi_lanes.size() != primary_inputs_.size() || key_lanes.size() != key_inputs_.size() )
      throw netlist_error( "simulate: input assignment arity mismatch" );
    std::vector<uint64_t> val( wire_names_.size(), 0 );
    for ( size_t i = 0; i < pi_lanes.size(); ++i )
      val[primary_inputs_[i]] = pi_lanes[i];
    for ( size_t i = 0; i < key_lanes.size(); ++i )
      val[key_inputs_[i]] = key_lanes[i];
    for ( auto gi : topo_ )
    {
      auto const& g = gates_[gi];
      uint64_t v;
      switch ( g.kind )
      {
      case GateKind::AND:
      case GateKind::NAND:
        v = ~uint64_t( 0 );
        for ( auto in : g.inputs )
          v &= val[in];
        if ( g.kind == GateKind::NAND )
          v = ~v;
        break;
      case GateKind::OR:
      case GateKind::NOR:
        v = 0;
        for ( auto in : g.inputs )
          v |= val[in];
        if ( g.kind == GateKind::NOR )
          v = ~v;
        break;
      case GateKind::XOR:
      case GateKind::XNOR:
        v = 0;
        for ( auto in : g.inputs )
          v ^= val[in];
        if ( g.kind == GateKind::XNOR )
          v = ~v;
        break;
      case GateKind::NOT:
        v = ~val[g.inputs[0]];
        break;
      case GateKind::BUF:
      default:
        v = val[g.inputs[0]];
        break;
      }
      val[g.output] = v;
    }
    return val;
  }

  /*! Single-pattern evaluation from a name-to-bit assignment.
      Throws when any input is missing. */
  std::unordered_map<std::string, bool>
  simulate( std::unordered_map<std::string, bool> const& assignment ) const
  {
    std::vector<uint64_t> pi( primary_inputs_.size() ), keys( key_inputs_.size() );
    auto fetch = [&]( uint32_t w ) {
      auto it = assignment.find( wire_names_[w] );
      if ( it == assignment.end() )
        throw netlist_error( "simulate: missing assignment for input " + wire_names_[w] );
      return it->second ? ~uint64_t( 0 ) : 0;
    };
    for ( size_t i = 0; i < primary_inputs_.size(); ++i )
      pi[i] = fetch( primary_inputs_[i] );
    for ( size_t i = 0; i < key_inputs_.size(); ++i )
      keys[i] = fetch( key_inputs_[i] );
    auto val = simulate_packed( pi, keys );
    std::unordered_map<std::string, bool> out;
    for ( auto w : outputs_ )
      out[wire_names_[w]] = val[w] & 1u;
    return out;
  }

  /*! Output bits for primary-input word \p x (bit i feeds primary input i)
      and key word \p key (bit i feeds keyinput i).  Output bit j of the
      result is primary output j. */
  uint64_t eval( uint64_t x, uint64_t key ) const
  {
    std::vector<uint64_t> pi( primary_inputs_.size() ), keys( key_inputs_.size() );
    for ( size_t i = 0; i < pi.size(); ++i )
      pi[i] = ( x >> i ) & 1u ? ~uint64_t( 0 ) : 0;
    for ( size_t i = 0; i < keys.size(); ++i )
      keys[i] = ( key >> i ) & 1u ? ~uint64_t( 0 ) : 0;
    auto val = simulate_packed( pi, keys );
    uint64_t y = 0;
    for ( size_t j = 0; j < outputs_.size(); ++j )
      y |= uint64_t( val[outputs_[j]] & 1u ) << j;
    return y;
  }

private:
  std::vector<std::string> wire_names_;
  std::unordered_map<std::string, uint32_t> wire_index_;
  std::vector<Gate> gates_;
  std::vector<uint32_t> inputs_;
  std::vector<uint32_t> outputs_;
  std::vector<uint32_t> driver_;
  std::vector<uint32_t> topo_;
  std::vector<uint32_t> primary_inputs_;
  std::vector<uint32_t> key_inputs_;
  bool finalized_ = false;
};

} // namespace gantisat
