package com.fixture.sm10_vulnerable;

import android.app.Activity;
import android.content.BroadcastReceiver;
import android.content.Context;
import android.content.Intent;
import android.content.IntentFilter;

public class ListenActivity extends Activity {
    private final BroadcastReceiver receiver = new BroadcastReceiver() {
        @Override
        public void onReceive(Context context, Intent intent) {
        }
    };

    void start() {
        registerReceiver(receiver, new IntentFilter("com.fixture.action.UPDATE"));
    }

    void startWithHandler() {
        String permission = null;
        registerReceiver(receiver, new IntentFilter("com.fixture.action.SYNC"), permission, null);
    }

    void startWith(String permission) {
        registerReceiver(receiver, new IntentFilter("com.fixture.action.OTHER"), permission, null);
    }
}
