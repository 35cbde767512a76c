package com.fixture.mixed_smells;

import android.app.Activity;
import android.app.PendingIntent;
import android.content.BroadcastReceiver;
import android.content.Intent;
import android.content.IntentFilter;

public class HubActivity extends Activity {
    void run(BroadcastReceiver r) {
        Intent ping = new Intent("com.fixture.action.HUB");
        sendBroadcast(ping);
        registerReceiver(r, new IntentFilter("com.fixture.action.HUB"));
        PendingIntent.getService(this, 0, ping, 0);
    }
}
