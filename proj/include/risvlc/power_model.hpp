// SPDX-License-Identifier: Apache-2.0
//
// risvlc - secrecy-rate simulation and optimization for RIS-aided indoor VLC
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

namespace risvlc {

// Per-stage consumption of the transmitter chain, one RIS element actuator,
// and one receiver chain. All watts. The filter power is drawn once at the
// transmitter and once per receiver.
struct PowerConsumptionModel {
    double P_DAC = 175e-3;
    double P_Filter = 2.5e-3;
    double P_PA = 280e-3;
    double P_Driver = 2758e-3;
    double P_TCircuit = 3250e-3;
    double P_Element = 100e-3;
    double P_ADC = 95e-3;
    double P_TIA = 2500e-3;
    double P_RCircuit = 1.9e-3;
};

} // namespace risvlc
